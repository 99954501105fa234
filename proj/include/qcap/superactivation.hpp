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

// Product tests across a bipartite cut and the pairwise additivity analysis
// built on them.

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qcap/capacity.hpp"
#include "qcap/channels.hpp"
#include "qcap/matops.hpp"
#include "qcap/states.hpp"

namespace qcap {

/**
 * m = sum_k c_k L_k (x) R_k with c_k descending and {L_k}, {R_k}
 * orthonormal under <X, Y> = Tr(X^dagger Y).
 */
struct OperatorSchmidtDecomposition {
  std::vector<double> coefficients;
  std::vector<ComplexMatrix> left_ops;
  std::vector<ComplexMatrix> right_ops;
};

/// Realignment + SVD. BadDims unless d1 * d2 matches the matrix edge.
OperatorSchmidtDecomposition operator_schmidt(const ComplexMatrix& m,
                                              std::size_t d1, std::size_t d2);
OperatorSchmidtDecomposition operator_schmidt(const DensityMatrix& state,
                                              std::size_t d1, std::size_t d2);

/// sqrt(sum_{k>=2} c_k^2) / ||m||_F, in [0, 1]; 0 for a product.
double product_residual(const std::vector<double>& coefficients);

struct ProductTest {
  bool is_product;
  double residual;
};
ProductTest is_product(const DensityMatrix& state, std::size_t d1,
                       std::size_t d2, double tol = 1e-6);

/// (||state^{T_B}||_1 - 1) / 2, clamped at zero.
double negativity(const DensityMatrix& state, std::size_t d1, std::size_t d2);

/**
 * |D(r1 (x) r2 || s1 (x) s2) - D(r1||s1) - D(r2||s2)|. SupportViolation if
 * any of the three divergences is infinite; DimMismatch for unequal pairs.
 */
double verify_factorization(const DensityMatrix& r1, const DensityMatrix& s1,
                            const DensityMatrix& r2, const DensityMatrix& s2);

enum class Verdict { kAdditiveProduct, kNonProductNoGain, kSuperactiveCandidate };
std::string_view verdict_name(Verdict v);

struct AnalysisOptions {
  /// Joint gain (bits) above which a pair is a superactivation candidate.
  double gap_tol = 1e-3;
  /// Single-channel value treated as zero capacity.
  double zero_cap_tol = 1e-4;
  /// Largest product residual of the joint optimum still called a product.
  double product_tol = 1e-4;
};

/**
 * D(N12(rho)||N12(sigma)) - D(N1 part) - D(N2 part) for the heaviest member
 * rho of the joint optimal ensemble against its average sigma, on the channel
 * outputs (ab) and on the environments (ae). Empty if a term is infinite.
 */
struct DivergenceSplit {
  std::optional<double> ab;
  std::optional<double> ae;
  std::optional<double> difference;
};

struct FactorizationReport {
  std::vector<double> schmidt_coeffs_optimal;
  std::vector<double> schmidt_coeffs_average;
  double product_residual_optimal;
  double product_residual_average;
  double negativity_optimal;
  double additivity_gap;
  Verdict verdict;
  /// Both single-channel values at or below zero_cap_tol.
  bool both_zero;
  double value_a;
  double value_b;
  double joint_value;
  InputForm joint_form;
  bool joint_converged;
  DivergenceSplit divergence_split;
  /// Joint optimal input across the a|b cut.
  DensityMatrix joint_optimal_input;
  /// Joint channel output of the optimal ensemble average.
  DensityMatrix joint_average_output;
};

/**
 * Runs q1 on both channels and joint_q1 on the pair, then tests the joint
 * optimal input and joint average output for product structure.
 */
FactorizationReport analyze_pair(const QuantumChannel& a, const QuantumChannel& b,
                                 const OptimizerConfig& cfg,
                                 const AnalysisOptions& options = {});

}  // namespace qcap
