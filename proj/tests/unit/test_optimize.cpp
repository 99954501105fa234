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

#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "qcap/optimize.hpp"

using Catch::Matchers::WithinAbs;
using namespace qcap::opt;

namespace {

/// -sum_i w_i (x_i - c_i)^2, maximum 0 at c.
class Quadratic final : public Objective {
 public:
  explicit Quadratic(std::vector<double> center) : center_(std::move(center)) {}
  std::size_t dimension() const override { return center_.size(); }
  double value(std::span<const double> x) const override {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      v -= double(i + 1) * (x[i] - center_[i]) * (x[i] - center_[i]);
    }
    return v;
  }
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override {
    for (std::size_t i = 0; i < x.size(); ++i) {
      grad[i] = -2.0 * double(i + 1) * (x[i] - center_[i]);
    }
    return value(x);
  }

 private:
  std::vector<double> center_;
};

/// Negated Rosenbrock, maximum 0 at (1, 1).
class Rosenbrock final : public Objective {
 public:
  std::size_t dimension() const override { return 2; }
  double value(std::span<const double> x) const override {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return -(a * a + 100.0 * b * b);
  }
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override {
    const double b = x[1] - x[0] * x[0];
    grad[0] = 2.0 * (1.0 - x[0]) + 400.0 * x[0] * b;
    grad[1] = -200.0 * b;
    return value(x);
  }
};

/// Gradient deliberately wrong, so every line search fails.
class LyingGradient final : public Objective {
 public:
  std::size_t dimension() const override { return 2; }
  double value(std::span<const double> x) const override {
    return -(x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 2.0) * (x[1] + 2.0);
  }
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override {
    grad[0] = 2.0 * (x[0] - 1.0);
    grad[1] = 2.0 * (x[1] + 2.0);
    return value(x);
  }
};

}  // namespace

TEST_CASE("maximize finds the peak of a concave quadratic") {
  const Quadratic f({1.0, -2.0, 0.5, 3.0});
  const AscentResult r = maximize(f, {0.0, 0.0, 0.0, 0.0}, {});
  CHECK(r.converged);
  CHECK_THAT(r.value, WithinAbs(0.0, 1e-10));
  CHECK_THAT(r.x[3], WithinAbs(3.0, 1e-5));
}

TEST_CASE("maximize handles a curved valley") {
  const Rosenbrock f;
  AscentOptions options;
  options.max_iters = 5000;
  options.conv_tol = 1e-14;
  const AscentResult r = maximize(f, {-1.2, 1.0}, options);
  CHECK_THAT(r.x[0], WithinAbs(1.0, 1e-4));
  CHECK_THAT(r.x[1], WithinAbs(1.0, 1e-4));
}

TEST_CASE("maximize never returns less than the start") {
  const Rosenbrock f;
  AscentOptions options;
  options.max_iters = 3;
  const std::vector<double> x0{-1.2, 1.0};
  const AscentResult r = maximize(f, x0, options);
  CHECK(r.value >= f.value(x0));
  CHECK(r.iterations <= 3);
}

TEST_CASE("failed line searches fall back to Nelder-Mead") {
  const LyingGradient f;
  const std::vector<double> x0{0.0, 0.0};
  const AscentResult r = maximize(f, x0, {});
  CHECK(r.simplex_fallbacks >= 1);
  CHECK(r.value > f.value(x0));
}

TEST_CASE("nelder_mead on its own") {
  const Quadratic f({0.3, -0.7});
  const AscentResult r = nelder_mead(f, {0.0, 0.0}, 0.5, 2000, 1e-14);
  CHECK_THAT(r.x[0], WithinAbs(0.3, 1e-5));
  CHECK_THAT(r.x[1], WithinAbs(-0.7, 1e-5));
}

TEST_CASE("finite_difference_gradient matches analytic gradients") {
  const Rosenbrock f;
  const std::vector<double> x{0.3, -0.4};
  std::vector<double> g(2);
  f.value_and_gradient(x, g);
  const std::vector<double> fd = finite_difference_gradient(f, x);
  CHECK_THAT(fd[0], WithinAbs(g[0], 1e-6));
  CHECK_THAT(fd[1], WithinAbs(g[1], 1e-6));
}

TEST_CASE("maximize is deterministic") {
  const Rosenbrock f;
  const AscentResult a = maximize(f, {-1.2, 1.0}, {});
  const AscentResult b = maximize(f, {-1.2, 1.0}, {});
  CHECK(a.x == b.x);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
}
