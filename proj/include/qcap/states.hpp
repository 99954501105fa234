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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcap/matops.hpp"

namespace qcap {

/// Tolerance shared by all state validity checks.
inline constexpr double kStateTol = 1e-10;

/**
 * Hermitian, positive semidefinite, unit-trace matrix. Instances only come
 * out of validate_state() (or library code that constructs them from a
 * manifestly valid parametrization), so holding one is proof of validity.
 */
class DensityMatrix {
 public:
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// Pure state |psi><psi| / <psi|psi>.
  static DensityMatrix pure(std::span<const Complex> psi);
  /// I / dim.
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// |index><index|.
  static DensityMatrix basis(std::size_t dim, std::size_t index);

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  friend DensityMatrix validate_state(const ComplexMatrix& m);
  friend DensityMatrix state_from_factor(const ComplexMatrix& factor);

  ComplexMatrix matrix_;
};

/**
 * Checks Hermiticity, positivity and unit trace at kStateTol. Eigenvalues in
 * [-kStateTol, 0) are clamped to zero, which is the only modification made to
 * the entries. Errors: NotHermitian, NotPSD, TraceNotOne.
 */
DensityMatrix validate_state(const ComplexMatrix& m);

/// G G^dagger / Tr(G G^dagger) for a nonzero dim x rank factor G.
DensityMatrix state_from_factor(const ComplexMatrix& factor);

/// Factor G with G G^dagger = rho (columns are scaled eigenvectors).
ComplexMatrix state_factor(const DensityMatrix& rho);

struct EnsembleMember {
  double prob;
  DensityMatrix state;
};

/**
 * Probability-weighted list of same-dimension states. The type does not care
 * whether it holds channel inputs or outputs; callers say which.
 */
class Ensemble {
 public:
  /// Validates probabilities (each in [0,1], sum 1 within kStateTol) and dims.
  explicit Ensemble(std::vector<EnsembleMember> members);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dim() const noexcept { return members_.front().state.dim(); }
  const std::vector<EnsembleMember>& members() const noexcept {
    return members_;
  }

 private:
  std::vector<EnsembleMember> members_;
};

/// Von Neumann entropy in bits, -sum lambda log2 lambda with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/**
 * Entropy of a Hermitian PSD matrix that is known to be a state up to
 * rounding; skips validation. Used on hot paths inside the optimizers.
 */
double entropy_of(const ComplexMatrix& m);

DensityMatrix average_state(const Ensemble& e);

/**
 * Random state G G^dagger / Tr(G G^dagger) with G a dim x rank matrix of
 * standard complex Gaussians drawn from a generator seeded with seed.
 * BadRank unless 1 <= rank <= dim.
 */
DensityMatrix random_state(std::size_t dim, std::size_t rank,
                           std::uint64_t seed);

}  // namespace qcap
