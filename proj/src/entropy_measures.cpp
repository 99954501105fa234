// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcap/entropy_measures.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qcap/error.hpp"

namespace qcap {

namespace {

void require_input_dim(std::size_t dim, const QuantumChannel& ch) {
  if (dim != ch.dim_in()) {
    throw Error(ErrorCode::kDimMismatch,
                "state dim " + std::to_string(dim) + ", channel input dim " +
                    std::to_string(ch.dim_in()));
  }
}

}  // namespace

RelEntResult relative_entropy(const DensityMatrix& rho,
                              const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::kDimMismatch, "relative entropy of unequal dims");
  }
  const EigenDecomposition sig = hermitian_eig(sigma.matrix());
  const ComplexMatrix& v = sig.eigenvectors;
  const ComplexMatrix& r = rho.matrix();
  const std::size_t n = rho.dim();

  // <v_j| rho |v_j> for every eigenvector of sigma.
  double kernel_mass = 0.0;
  double cross = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Complex weight = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      Complex row = 0.0;
      for (std::size_t b = 0; b < n; ++b) row += r(a, b) * v(b, j);
      weight += std::conj(v(a, j)) * row;
    }
    const double lambda = sig.eigenvalues[j];
    if (lambda <= kZeroTol) {
      kernel_mass += weight.real();
    } else {
      cross += weight.real() * std::log2(lambda);
    }
  }
  if (kernel_mass > kSupportMassTol) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {-von_neumann_entropy(rho) - cross, false};
}

double holevo_chi(const Ensemble& e, const QuantumChannel& ch) {
  require_input_dim(e.dim(), ch);
  double mixed = 0.0;
  for (const EnsembleMember& m : e.members()) {
    if (m.prob == 0.0) continue;
    mixed += m.prob * entropy_of(apply_raw(ch, m.state.matrix()));
  }
  return entropy_of(apply_raw(ch, average_state(e).matrix())) - mixed;
}

double holevo_from_relent(const Ensemble& e, const QuantumChannel& ch) {
  require_input_dim(e.dim(), ch);
  const DensityMatrix sigma = apply(ch, average_state(e));
  double chi = 0.0;
  for (const EnsembleMember& m : e.members()) {
    if (m.prob == 0.0) continue;
    const RelEntResult d = relative_entropy(apply(ch, m.state), sigma);
    if (d.support_violation) {
      throw Error(ErrorCode::kInfiniteTerm,
                  "member output leaves the support of the average output");
    }
    chi += m.prob * d.value;
  }
  return chi;
}

double entropy_exchange(const DensityMatrix& rho, const QuantumChannel& ch) {
  require_input_dim(rho.dim(), ch);
  return entropy_of(apply_raw(complementary(ch), rho.matrix()));
}

CoherentInfoResult coherent_information(const DensityMatrix& rho,
                                        const QuantumChannel& ch) {
  require_input_dim(rho.dim(), ch);
  const double s_out = entropy_of(apply_raw(ch, rho.matrix()));
  const double s_env = entropy_exchange(rho, ch);
  return {s_out - s_env, s_out, s_env, std::nullopt, std::nullopt};
}

CoherentInfoResult coherent_info_via_holevo(const Ensemble& e,
                                            const QuantumChannel& ch) {
  require_input_dim(e.dim(), ch);
  const QuantumChannel env = complementary(ch);
  const double chi_ab = holevo_chi(e, ch);
  const double chi_ae = holevo_chi(e, env);
  const DensityMatrix avg = average_state(e);
  const double s_out = entropy_of(apply_raw(ch, avg.matrix()));
  const double s_env = entropy_of(apply_raw(env, avg.matrix()));
  return {chi_ab - chi_ae, s_out, s_env, chi_ab, chi_ae};
}

}  // namespace qcap
