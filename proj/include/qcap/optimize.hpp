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
#include <span>
#include <vector>

namespace qcap::opt {

/// Smooth function of an unconstrained real parameter vector, to be maximized.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  /// Writes the gradient into grad (size dimension()) and returns the value.
  virtual double value_and_gradient(std::span<const double> x,
                                    std::span<double> grad) const = 0;
};

struct AscentOptions {
  std::size_t max_iters = 2000;
  /// Length of the first steepest-ascent trial step.
  double step_init = 0.1;
  /// Stop once three consecutive steps each gain less than this (relative).
  double conv_tol = 1e-9;
  /// Consecutive failed line searches before the Nelder-Mead fallback.
  std::size_t failures_before_simplex = 5;
  std::size_t lbfgs_memory = 8;
};

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t simplex_fallbacks = 0;
};

/**
 * Limited-memory BFGS ascent with Armijo backtracking. After
 * failures_before_simplex consecutive line searches that fail to improve,
 * a bounded Nelder-Mead search is run from the current point; if that also
 * fails to improve by conv_tol the point is declared stationary.
 */
AscentResult maximize(const Objective& f, std::vector<double> x0,
                      const AscentOptions& options);

/// Derivative-free maximization on a simplex of edge `scale` around x0.
AscentResult nelder_mead(const Objective& f, std::vector<double> x0,
                         double scale, std::size_t max_evals, double tol);

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> finite_difference_gradient(const Objective& f,
                                               std::span<const double> x,
                                               double h = 1e-6);

}  // namespace qcap::opt
