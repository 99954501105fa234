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

#include <optional>

#include "qcap/channels.hpp"
#include "qcap/states.hpp"

namespace qcap {

/// Probability mass of rho on ker(sigma) above which D(rho||sigma) = +inf.
inline constexpr double kSupportMassTol = 1e-10;

struct RelEntResult {
  double value;  ///< bits; +inf exactly when support_violation is set
  bool support_violation;
};

/**
 * D(rho||sigma) = Tr rho (log2 rho - log2 sigma), evaluated on supports.
 * Returns +inf with the violation flag when rho puts more than
 * kSupportMassTol of its weight on the kernel of sigma.
 */
RelEntResult relative_entropy(const DensityMatrix& rho,
                              const DensityMatrix& sigma);

/// Holevo quantity S(N(sum p_i rho_i)) - sum p_i S(N(rho_i)), in bits.
double holevo_chi(const Ensemble& e, const QuantumChannel& ch);

/**
 * The same quantity written as a divergence radius,
 * sum_k p_k D(N(rho_k) || N(sigma)) with sigma the ensemble average.
 * InfiniteTerm if a member escapes the support of the average output, which
 * can only happen through rounding.
 */
double holevo_from_relent(const Ensemble& e, const QuantumChannel& ch);

/// Entropy of the environment output S(N^c(rho)).
double entropy_exchange(const DensityMatrix& rho, const QuantumChannel& ch);

/**
 * Coherent information with its parts. The Holevo fields are only present
 * when the result came from an ensemble.
 */
struct CoherentInfoResult {
  double value;
  double s_output;
  double s_env;
  std::optional<double> chi_ab;
  std::optional<double> chi_ae;
};

/// S(N(rho)) - S(N^c(rho)); may be negative.
CoherentInfoResult coherent_information(const DensityMatrix& rho,
                                        const QuantumChannel& ch);

/**
 * chi_AB - chi_AE for an input ensemble. s_output and s_env are the
 * entropies of the two outputs of the ensemble average.
 */
CoherentInfoResult coherent_info_via_holevo(const Ensemble& e,
                                            const QuantumChannel& ch);

}  // namespace qcap
