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

// Heuristic maximizers for single-use quantum capacity and Holevo capacity.
// Every reported value is a lower bound achieved by the returned witness.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/states.hpp"

namespace qcap {

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::size_t max_iters = 2000;
  double step_init = 0.1;
  double conv_tol = 1e-9;
  /// Members per ensemble; dim_in^2 when unset.
  std::optional<std::size_t> ensemble_size;
  std::uint64_t seed = 0;
  /// Largest input dimension the optimizers accept.
  std::size_t max_dim_in = 16;
  /// Worker threads for restarts. Results do not depend on this.
  std::size_t threads = 1;

  /// BadConfig unless every count is positive and 0 < conv_tol < step_init.
  void validate() const;
};

enum class InputForm { kSingleState, kEnsemble };
std::string_view input_form_name(InputForm form);

struct CapacityReport {
  /// max(0, raw_value), per channel use.
  double value;
  /// Best value found before clipping, per channel use.
  double raw_value;
  /// Ensemble achieving raw_value. For a single-state optimum this is the
  /// spectral decomposition of optimal_single_state.
  Ensemble optimal_input;
  DensityMatrix optimal_single_state;
  /// Best value per restart (per channel use); raw_value is their maximum.
  std::vector<double> per_restart_values;
  bool converged;
  std::size_t iterations_used;
  /// Best value of each parametrization, per channel use.
  double single_value;
  double ensemble_value;
  InputForm best_form;
  std::size_t copies = 1;
  /// raw_value * copies.
  double unnormalized_value;
  /// Divergence-radius gap, Holevo runs only.
  std::optional<double> certificate_gap;
  /// Single-channel values of the factors in a joint run.
  std::vector<double> component_values;
};

/// Starting point for restart 1.
struct WarmStart {
  DensityMatrix single;
  Ensemble ensemble;
};

/**
 * Q1 lower bound: the larger of max_rho I_coh(rho) over single inputs and
 * max over ensembles of chi_AB - chi_AE. DimTooLarge past cfg.max_dim_in.
 */
CapacityReport q1(const QuantumChannel& ch, const OptimizerConfig& cfg,
                  const std::optional<WarmStart>& warm = std::nullopt);

/**
 * Holevo capacity by alternating between the average output and members
 * pushed toward maximal divergence from it. certificate_gap is
 * max_psi D(N(psi)||sigma) - chi at the returned ensemble.
 */
CapacityReport holevo_minimax(const QuantumChannel& ch,
                              const OptimizerConfig& cfg);

struct JointCapacity {
  CapacityReport joint;
  CapacityReport a;
  CapacityReport b;
};

/// q1 of a (x) b, warm-started from the product of the single optima.
JointCapacity joint_q1_detailed(const QuantumChannel& a, const QuantumChannel& b,
                                const OptimizerConfig& cfg);
CapacityReport joint_q1(const QuantumChannel& a, const QuantumChannel& b,
                        const OptimizerConfig& cfg);

/// (1/n) q1(ch^(x)n), 1 <= n <= 3.
CapacityReport n_copy_q1(const QuantumChannel& ch, std::size_t n,
                         const OptimizerConfig& cfg);

/// Pure-state ensemble of eigenvectors weighted by eigenvalues.
Ensemble spectral_ensemble(const DensityMatrix& rho);

/// {p_i q_j, rho_i (x) sigma_j}.
Ensemble product_ensemble(const Ensemble& a, const Ensemble& b);

}  // namespace qcap
