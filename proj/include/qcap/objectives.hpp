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

// Entropic objectives over unconstrained state parametrizations.
//
// A state is carried as a complex dim x rank factor G with rho = G G^dagger /
// Tr(G G^dagger); ensemble weights are carried as logits mapped through
// softmax. Gradients are exact: perturbations of G never leave the support of
// the states they touch, so derivatives of entropies only need logarithms on
// the support.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/matops.hpp"
#include "qcap/optimize.hpp"
#include "qcap/states.hpp"

namespace qcap {

/// Kraus data laid out for repeated evaluation of N, N^c and their adjoints.
class ChannelKernel {
 public:
  explicit ChannelKernel(const QuantumChannel& ch);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  std::size_t env_dim() const noexcept { return kraus_.size(); }

  /// N(rho), and N^c(rho) when env is non-null.
  void outputs(const ComplexMatrix& rho, ComplexMatrix* out,
               ComplexMatrix* env) const;
  ComplexMatrix adjoint_out(const ComplexMatrix& y) const;
  ComplexMatrix adjoint_env(const ComplexMatrix& y) const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
  std::vector<ComplexMatrix> kraus_adjoint_;
};

/// Entropy of a state-like matrix together with log2 on its support.
struct EntropyWithLog {
  double entropy;
  ComplexMatrix log_support;
};
EntropyWithLog entropy_with_log(const ComplexMatrix& m);

/// Packing of complex factors into the real parameter vector.
ComplexMatrix unpack_factor(std::span<const double> x, std::size_t rows,
                            std::size_t cols);
void pack_factor(const ComplexMatrix& g, std::span<double> x);
std::vector<double> softmax(std::span<const double> logits);

/**
 * I(rho) = S(N(rho)) - env_weight * S(N^c(rho)) over a single factor G.
 * env_weight = 1 gives coherent information.
 */
class SingleStateObjective final : public opt::Objective {
 public:
  SingleStateObjective(const QuantumChannel& ch, std::size_t rank,
                       double env_weight = 1.0);

  std::size_t dimension() const override { return 2 * dim_ * rank_; }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

  DensityMatrix state(std::span<const double> x) const;
  std::size_t rank() const noexcept { return rank_; }

 private:
  double evaluate(std::span<const double> x, std::span<double> grad) const;

  ChannelKernel kernel_;
  std::size_t dim_;
  std::size_t rank_;
  double env_weight_;
};

/**
 * Ensemble objective
 *   S(N(avg)) - c S(N^c(avg)) - sum_k p_k [S(N(rho_k)) - c S(N^c(rho_k))]
 * with c = env_weight. c = 1 gives chi_AB - chi_AE, c = 0 gives chi_AB.
 * Parameters: members factors in order, then one logit per member.
 */
class EnsembleObjective final : public opt::Objective {
 public:
  EnsembleObjective(const QuantumChannel& ch, std::size_t members,
                    std::size_t rank, double env_weight);

  std::size_t dimension() const override {
    return members_ * (2 * dim_ * rank_ + 1);
  }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

  Ensemble ensemble(std::span<const double> x) const;
  std::size_t members() const noexcept { return members_; }
  std::size_t rank() const noexcept { return rank_; }

  /// Parameter vector for given member factors (dim x rank) and weights.
  std::vector<double> encode(const std::vector<ComplexMatrix>& factors,
                             std::span<const double> probs) const;

 private:
  double evaluate(std::span<const double> x, std::span<double> grad) const;

  ChannelKernel kernel_;
  std::size_t dim_;
  std::size_t members_;
  std::size_t rank_;
  double env_weight_;
};

/**
 * D(N(rho) || sigma) as a function of a pure input with sigma held fixed
 * (sigma enters through log2 on its support). Used to push ensemble members
 * toward the states farthest from the current average output.
 */
class DivergenceObjective final : public opt::Objective {
 public:
  DivergenceObjective(const QuantumChannel& ch, ComplexMatrix log_sigma);

  std::size_t dimension() const override { return 2 * dim_; }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

 private:
  double evaluate(std::span<const double> x, std::span<double> grad) const;

  ChannelKernel kernel_;
  std::size_t dim_;
  ComplexMatrix log_sigma_;
  ComplexMatrix pulled_log_sigma_;  // N^dagger(log sigma)
};

}  // namespace qcap
