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

#include "qcap/superactivation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qcap/entropy_measures.hpp"
#include "qcap/error.hpp"

namespace qcap {

namespace {

void require_cut(std::size_t edge, std::size_t d1, std::size_t d2) {
  if (d1 == 0 || d2 == 0 || d1 * d2 != edge) {
    throw Error(ErrorCode::kBadDims, "cut " + std::to_string(d1) + "x" +
                                         std::to_string(d2) + " of dimension " +
                                         std::to_string(edge));
  }
}

}  // namespace

OperatorSchmidtDecomposition operator_schmidt(const ComplexMatrix& m,
                                              std::size_t d1, std::size_t d2) {
  if (!m.is_square()) throw Error(ErrorCode::kShapeMismatch, "non-square operator");
  require_cut(m.rows(), d1, d2);
  // R[(i1 j1), (i2 j2)] = m[(i1 i2), (j1 j2)].
  ComplexMatrix realigned(d1 * d1, d2 * d2);
  for (std::size_t i1 = 0; i1 < d1; ++i1) {
    for (std::size_t j1 = 0; j1 < d1; ++j1) {
      for (std::size_t i2 = 0; i2 < d2; ++i2) {
        for (std::size_t j2 = 0; j2 < d2; ++j2) {
          realigned(i1 * d1 + j1, i2 * d2 + j2) = m(i1 * d2 + i2, j1 * d2 + j2);
        }
      }
    }
  }
  const SingularValueDecomposition s = svd(realigned);
  OperatorSchmidtDecomposition out;
  out.coefficients = s.singular_values;
  for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
    ComplexMatrix left(d1, d1);
    ComplexMatrix right(d2, d2);
    for (std::size_t i = 0; i < d1; ++i) {
      for (std::size_t j = 0; j < d1; ++j) left(i, j) = s.left(i * d1 + j, k);
    }
    for (std::size_t i = 0; i < d2; ++i) {
      for (std::size_t j = 0; j < d2; ++j) {
        right(i, j) = std::conj(s.right(i * d2 + j, k));
      }
    }
    out.left_ops.push_back(std::move(left));
    out.right_ops.push_back(std::move(right));
  }
  return out;
}

OperatorSchmidtDecomposition operator_schmidt(const DensityMatrix& state,
                                              std::size_t d1, std::size_t d2) {
  return operator_schmidt(state.matrix(), d1, d2);
}

double product_residual(const std::vector<double>& coefficients) {
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const double c2 = coefficients[k] * coefficients[k];
    total += c2;
    if (k > 0) tail += c2;
  }
  if (!(total > 0.0)) return 0.0;
  return std::min(1.0, std::sqrt(tail / total));
}

ProductTest is_product(const DensityMatrix& state, std::size_t d1,
                       std::size_t d2, double tol) {
  const double r = product_residual(operator_schmidt(state, d1, d2).coefficients);
  return {r <= tol, r};
}

double negativity(const DensityMatrix& state, std::size_t d1, std::size_t d2) {
  require_cut(state.dim(), d1, d2);
  const EigenDecomposition eig =
      hermitian_eig(partial_transpose_second(state.matrix(), d1, d2));
  double trace_norm = 0.0;
  for (double l : eig.eigenvalues) trace_norm += std::abs(l);
  return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

double verify_factorization(const DensityMatrix& r1, const DensityMatrix& s1,
                            const DensityMatrix& r2, const DensityMatrix& s2) {
  if (r1.dim() != s1.dim() || r2.dim() != s2.dim()) {
    throw Error(ErrorCode::kDimMismatch, "factorization pairs of unequal dims");
  }
  const RelEntResult d1 = relative_entropy(r1, s1);
  const RelEntResult d2 = relative_entropy(r2, s2);
  const RelEntResult joint =
      relative_entropy(validate_state(tensor(r1.matrix(), r2.matrix())),
                       validate_state(tensor(s1.matrix(), s2.matrix())));
  if (d1.support_violation || d2.support_violation || joint.support_violation) {
    throw Error(ErrorCode::kSupportViolation,
                "relative entropy term is infinite");
  }
  return std::abs(joint.value - d1.value - d2.value);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kAdditiveProduct:
      return "ADDITIVE_PRODUCT";
    case Verdict::kNonProductNoGain:
      return "NON_PRODUCT_NO_GAIN";
    case Verdict::kSuperactiveCandidate:
      return "SUPERACTIVE_CANDIDATE";
  }
  return "UNKNOWN";
}

namespace {

// D(rho||sigma) - D(rho_1||sigma_1) - D(rho_2||sigma_2) for marginals on the
// dims[0] | dims[1] cut; empty if any term is infinite.
std::optional<double> split_defect(const DensityMatrix& rho,
                                   const DensityMatrix& sigma,
                                   std::array<std::size_t, 2> dims) {
  const RelEntResult whole = relative_entropy(rho, sigma);
  if (whole.support_violation) return std::nullopt;
  double parts = 0.0;
  for (std::size_t side = 0; side < 2; ++side) {
    const std::array<std::size_t, 1> keep{side};
    const DensityMatrix r = validate_state(partial_trace(rho.matrix(), dims, keep));
    const DensityMatrix s =
        validate_state(partial_trace(sigma.matrix(), dims, keep));
    const RelEntResult d = relative_entropy(r, s);
    if (d.support_violation) return std::nullopt;
    parts += d.value;
  }
  return whole.value - parts;
}

}  // namespace

FactorizationReport analyze_pair(const QuantumChannel& a, const QuantumChannel& b,
                                 const OptimizerConfig& cfg,
                                 const AnalysisOptions& options) {
  const JointCapacity run = joint_q1_detailed(a, b, cfg);
  const CapacityReport& joint = run.joint;
  const QuantumChannel joint_channel = tensor_channels(a, b);
  const std::size_t da = a.dim_in();
  const std::size_t db = b.dim_in();

  const DensityMatrix average_input = average_state(joint.optimal_input);
  DensityMatrix optimal_input = joint.best_form == InputForm::kSingleState
                                    ? joint.optimal_single_state
                                    : average_input;
  DensityMatrix average_output = apply(joint_channel, average_input);

  const OperatorSchmidtDecomposition opt_schmidt =
      operator_schmidt(optimal_input, da, db);
  const OperatorSchmidtDecomposition avg_schmidt =
      operator_schmidt(average_output, a.dim_out(), b.dim_out());

  // Heaviest member against the average, on both outputs.
  const auto& members = joint.optimal_input.members();
  const auto heaviest = std::max_element(
      members.begin(), members.end(),
      [](const EnsembleMember& x, const EnsembleMember& y) { return x.prob < y.prob; });
  const QuantumChannel env = complementary(joint_channel);
  DivergenceSplit split;
  split.ab = split_defect(apply(joint_channel, heaviest->state), average_output,
                          {a.dim_out(), b.dim_out()});
  split.ae = split_defect(apply(env, heaviest->state), apply(env, average_input),
                          {a.env_dim(), b.env_dim()});
  if (split.ab && split.ae) split.difference = *split.ab - *split.ae;

  const double gap = joint.value - (run.a.value + run.b.value);
  const double residual_opt = product_residual(opt_schmidt.coefficients);
  Verdict verdict;
  if (gap > options.gap_tol) {
    verdict = Verdict::kSuperactiveCandidate;
  } else if (residual_opt <= options.product_tol) {
    verdict = Verdict::kAdditiveProduct;
  } else {
    verdict = Verdict::kNonProductNoGain;
  }

  return FactorizationReport{
      .schmidt_coeffs_optimal = opt_schmidt.coefficients,
      .schmidt_coeffs_average = avg_schmidt.coefficients,
      .product_residual_optimal = residual_opt,
      .product_residual_average = product_residual(avg_schmidt.coefficients),
      .negativity_optimal = negativity(optimal_input, da, db),
      .additivity_gap = gap,
      .verdict = verdict,
      .both_zero = run.a.value <= options.zero_cap_tol &&
                   run.b.value <= options.zero_cap_tol,
      .value_a = run.a.value,
      .value_b = run.b.value,
      .joint_value = joint.value,
      .joint_form = joint.best_form,
      .joint_converged = joint.converged,
      .divergence_split = split,
      .joint_optimal_input = std::move(optimal_input),
      .joint_average_output = std::move(average_output),
  };
}

}  // namespace qcap
