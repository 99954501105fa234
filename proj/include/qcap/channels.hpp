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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcap/matops.hpp"
#include "qcap/states.hpp"

namespace qcap {

/// Allowed ||sum_k A_k^dagger A_k - I||_F for a channel.
inline constexpr double kCompletenessTol = 1e-9;

/**
 * Completely positive trace-preserving map in Kraus form,
 * rho -> sum_k A_k rho A_k^dagger. The environment of the Stinespring
 * dilation has one level per Kraus operator.
 */
class QuantumChannel {
 public:
  /**
   * Validates shapes, the Kraus count bound 1 <= |kraus| <= dim_in * dim_out
   * and completeness. Throws CompletenessViolation with the measured defect.
   */
  QuantumChannel(std::size_t dim_in, std::size_t dim_out,
                 std::vector<ComplexMatrix> kraus);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  std::size_t env_dim() const noexcept { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  /// ||sum_k A_k^dagger A_k - I||_F.
  double completeness_defect() const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// DimMismatch unless rho.dim() == ch.dim_in().
DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);

/// Unvalidated sum_k A_k m A_k^dagger for any dim_in x dim_in matrix.
ComplexMatrix apply_raw(const QuantumChannel& ch, const ComplexMatrix& m);

/// Adjoint map Y -> sum_k A_k^dagger Y A_k.
ComplexMatrix apply_adjoint_raw(const QuantumChannel& ch, const ComplexMatrix& y);

/**
 * V = sum_k A_k (x) |k>_env, shape (dim_out * env_dim) x dim_in with the
 * output factor first.
 */
ComplexMatrix stinespring_isometry(const QuantumChannel& ch);

/**
 * Channel to the environment, rho -> Tr_out(V rho V^dagger). Its Kraus
 * operators are B_j with (B_j)_{k,i} = (A_k)_{j,i}.
 */
QuantumChannel complementary(const QuantumChannel& ch);

/// Kraus set {A_i (x) B_j}, i major. DimensionOverflow past max_dim.
QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b,
                               std::size_t max_dim = kDefaultMaxDim);

/// ch (x) ... (x) ch with n factors.
QuantumChannel tensor_power(const QuantumChannel& ch, std::size_t n,
                            std::size_t max_dim = kDefaultMaxDim);

/// Choi matrix sum_ij |i><j| (x) N(|i><j|), input factor first.
ComplexMatrix choi_matrix(const QuantumChannel& ch);

/**
 * Standard channels by name:
 *   identity(d), erasure(d, p), depolarizing(p), amplitude_damping(gamma),
 *   phase_damping(lambda).
 * The erasure channel outputs on d + 1 levels with flag |d>. Errors:
 * UnknownChannel, BadParam (wrong arity or probability outside [0, 1]).
 */
QuantumChannel zoo(std::string_view name, std::span<const double> params);

/// Parses "NAME(P1,P2,...)" and forwards to zoo().
QuantumChannel zoo_from_spec(std::string_view spec);

/// JSON text of the channel-spec file format; doubles round-trip exactly.
std::string channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(std::string_view text);

/// Reads a channel-spec file. Errors: ParseError, CompletenessViolation.
QuantumChannel load_channel(const std::filesystem::path& path);
void save_channel(const QuantumChannel& ch, const std::filesystem::path& path);

/// State-spec file: {"dim": n, "matrix": [[[re, im], ...], ...]}.
DensityMatrix state_from_json(std::string_view text);
std::string state_to_json(const DensityMatrix& rho);
DensityMatrix load_state(const std::filesystem::path& path);

}  // namespace qcap
