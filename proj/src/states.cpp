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

#include "qcap/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qcap/error.hpp"

namespace qcap {

namespace {

double entropy_from_eigenvalues(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

}  // namespace

DensityMatrix validate_state(const ComplexMatrix& m) {
  if (!m.is_square() || m.empty()) {
    throw Error(ErrorCode::kNotHermitian, "state matrix must be square");
  }
  const double defect = hermiticity_defect(m);
  if (defect > kStateTol) {
    throw Error(ErrorCode::kNotHermitian,
                "||rho - rho^dagger||_F = " + std::to_string(defect));
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw Error(ErrorCode::kTraceNotOne, "trace = " + std::to_string(tr));
  }
  EigenDecomposition eig = hermitian_eig(m);
  const double min_eig = eig.eigenvalues.front();
  if (min_eig < -kStateTol) {
    throw Error(ErrorCode::kNotPSD,
                "smallest eigenvalue " + std::to_string(min_eig));
  }
  if (min_eig < 0.0) {
    return DensityMatrix(spectral_apply(
        eig, [](double lambda) { return lambda < 0.0 ? 0.0 : lambda; }));
  }
  return DensityMatrix(m);
}

DensityMatrix state_from_factor(const ComplexMatrix& factor) {
  ComplexMatrix m = factor * factor.adjoint();
  const double t = m.trace().real();
  if (!(t > 0.0)) {
    throw Error(ErrorCode::kBadParam, "state factor is zero");
  }
  m *= 1.0 / t;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix(std::move(m));
}

ComplexMatrix state_factor(const DensityMatrix& rho) {
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  const std::size_t n = rho.dim();
  ComplexMatrix g(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
    for (std::size_t i = 0; i < n; ++i) g(i, k) = eig.eigenvectors(i, k) * root;
  }
  return g;
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
  ComplexMatrix g(psi.size(), 1, std::vector<Complex>(psi.begin(), psi.end()));
  return state_from_factor(g);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::kBadParam, "basis index out of range");
  ComplexMatrix m(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

Ensemble::Ensemble(std::vector<EnsembleMember> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw Error(ErrorCode::kBadParam, "ensemble has no members");
  }
  double total = 0.0;
  for (const EnsembleMember& m : members_) {
    if (!(m.prob >= 0.0 && m.prob <= 1.0)) {
      throw Error(ErrorCode::kBadParam,
                  "probability " + std::to_string(m.prob) + " outside [0,1]");
    }
    if (m.state.dim() != members_.front().state.dim()) {
      throw Error(ErrorCode::kDimMismatch, "ensemble members differ in dim");
    }
    total += m.prob;
  }
  if (std::abs(total - 1.0) > kStateTol) {
    throw Error(ErrorCode::kBadParam,
                "probabilities sum to " + std::to_string(total));
  }
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const double cap = std::log2(static_cast<double>(rho.dim()));
  return std::clamp(entropy_of(rho.matrix()), 0.0, cap);
}

double entropy_of(const ComplexMatrix& m) {
  if (m.rows() == 1) return 0.0;
  return entropy_from_eigenvalues(hermitian_eig(m).eigenvalues);
}

DensityMatrix average_state(const Ensemble& e) {
  ComplexMatrix sum(e.dim(), e.dim());
  for (const EnsembleMember& m : e.members()) {
    if (m.prob == 0.0) continue;
    ComplexMatrix term = m.state.matrix();
    term *= m.prob;
    sum += term;
  }
  return validate_state(sum);
}

DensityMatrix random_state(std::size_t dim, std::size_t rank,
                           std::uint64_t seed) {
  if (dim == 0 || rank == 0 || rank > dim) {
    throw Error(ErrorCode::kBadRank, "rank " + std::to_string(rank) +
                                         " for dim " + std::to_string(dim));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, rank);
  for (Complex& z : g.entries()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return state_from_factor(g);
}

}  // namespace qcap
