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

#include "qcap/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace qcap::opt {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion on the minimization problem phi = -f, whose gradient is
// -g. Returns an ascent direction for f.
std::vector<double> lbfgs_direction(const std::deque<CurvaturePair>& memory,
                                    std::span<const double> g) {
  std::vector<double> q(g.begin(), g.end());  // q = -grad(phi) = g
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    alpha[k] = memory[k].rho * dot(memory[k].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * memory[k].y[i];
  }
  const CurvaturePair& last = memory.back();
  const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
  for (double& v : q) v *= gamma;
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const double beta = memory[k].rho * dot(memory[k].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += memory[k].s[i] * (alpha[k] - beta);
  }
  return q;
}

}  // namespace

AscentResult maximize(const Objective& f, std::vector<double> x0,
                      const AscentOptions& options) {
  const std::size_t n = x0.size();
  AscentResult out;
  out.x = std::move(x0);
  if (n == 0) {
    out.value = f.value(out.x);
    out.converged = true;
    return out;
  }

  std::vector<double> grad(n);
  double value = f.value_and_gradient(out.x, grad);
  std::deque<CurvaturePair> memory;
  std::size_t failures = 0;
  std::size_t small_steps = 0;
  double steepest_scale = options.step_init;

  std::vector<double> trial(n);
  std::vector<double> trial_grad(n);
  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    out.iterations = iter + 1;
    const double gnorm = norm(grad);
    if (!(gnorm > 1e-14)) {
      out.converged = true;
      break;
    }

    std::vector<double> dir;
    if (!memory.empty()) {
      dir = lbfgs_direction(memory, grad);
      if (!(dot(dir, grad) > 0.0)) {
        memory.clear();
        dir.clear();
      }
    }
    if (dir.empty()) {
      dir.assign(grad.begin(), grad.end());
      for (double& v : dir) v *= steepest_scale / gnorm;
    }

    const double slope = dot(dir, grad);
    double step = 1.0;
    bool accepted = false;
    double trial_value = value;
    for (int back = 0; back < 30; ++back) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = out.x[i] + step * dir[i];
      // Full steps are usually accepted, so pay for the gradient up front.
      const bool with_grad = back == 0;
      trial_value = with_grad ? f.value_and_gradient(trial, trial_grad)
                              : f.value(trial);
      if (std::isfinite(trial_value) &&
          trial_value >= value + 1e-4 * step * slope && trial_value > value) {
        accepted = true;
        if (!with_grad) trial_value = f.value_and_gradient(trial, trial_grad);
        break;
      }
      step *= 0.5;
    }

    if (!accepted) {
      memory.clear();
      steepest_scale *= 0.1;
      if (++failures < options.failures_before_simplex) continue;

      ++out.simplex_fallbacks;
      const std::size_t budget = std::min<std::size_t>(4000, 10 * (n + 1));
      AscentResult nm = nelder_mead(f, out.x, options.step_init * 1e-3, budget,
                                    options.conv_tol);
      if (nm.value > value + options.conv_tol * std::max(1.0, std::abs(value))) {
        out.x = std::move(nm.x);
        value = f.value_and_gradient(out.x, grad);
        failures = 0;
        steepest_scale = options.step_init;
        continue;
      }
      out.converged = true;
      break;
    }

    failures = 0;
    const double gain = trial_value - value;
    CurvaturePair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = trial[i] - out.x[i];
      // y for phi = -f is -(g_new - g_old).
      pair.y[i] = grad[i] - trial_grad[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-16 * norm(pair.s) * norm(pair.y)) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > options.lbfgs_memory) memory.pop_front();
    }
    out.x.swap(trial);
    grad.swap(trial_grad);
    value = trial_value;
    steepest_scale = std::max(steepest_scale, options.step_init * 1e-6);

    if (gain <= options.conv_tol * std::max(1.0, std::abs(value))) {
      if (++small_steps >= 3) {
        out.converged = true;
        break;
      }
    } else {
      small_steps = 0;
    }
  }
  out.value = value;
  return out;
}

AscentResult nelder_mead(const Objective& f, std::vector<double> x0,
                         double scale, std::size_t max_evals, double tol) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f.value(x);
    return std::isfinite(v) ? v : -HUGE_VAL;
  };
  values[0] = eval(simplex[0]);
  for (std::size_t i = 0; i < n; ++i) {
    simplex[i + 1][i] += scale;
    values[i + 1] = eval(simplex[i + 1]);
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n);
  std::vector<double> candidate(n);
  auto point = [&](double t, const std::vector<double>& worst) {
    for (std::size_t i = 0; i < n; ++i) {
      candidate[i] = centroid[i] + t * (worst[i] - centroid[i]);
    }
    return candidate;
  };

  std::size_t iterations = 0;
  bool converged = false;
  while (evals < max_evals) {
    ++iterations;
    std::iota(order.begin(), order.end(), 0);
    // Descending by value: order[0] is best, order[n] is worst.
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const double best = values[order[0]];
    const double worst_value = values[order[n]];
    if (best - worst_value <= tol * std::max(1.0, std::abs(best))) {
      converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);
    const std::vector<double>& worst = simplex[order[n]];
    const double second_worst = values[order[n - 1]];

    const std::vector<double> reflected = point(-1.0, worst);
    const double fr = eval(reflected);
    if (fr > best) {
      const std::vector<double> expanded = point(-2.0, worst);
      const double fe = eval(expanded);
      if (fe > fr) {
        simplex[order[n]] = expanded;
        values[order[n]] = fe;
      } else {
        simplex[order[n]] = reflected;
        values[order[n]] = fr;
      }
      continue;
    }
    if (fr > second_worst) {
      simplex[order[n]] = reflected;
      values[order[n]] = fr;
      continue;
    }
    const bool outside = fr > worst_value;
    const std::vector<double> contracted = point(outside ? -0.5 : 0.5, worst);
    const double fc = eval(contracted);
    if (fc > std::max(fr, worst_value)) {
      simplex[order[n]] = contracted;
      values[order[n]] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    const std::vector<double> anchor = simplex[order[0]];
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<double>& v = simplex[order[k]];
      for (std::size_t i = 0; i < n; ++i) v[i] = anchor[i] + 0.5 * (v[i] - anchor[i]);
      values[order[k]] = eval(v);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                               values.begin());
  AscentResult out;
  out.x = simplex[best];
  out.value = values[best];
  out.converged = converged;
  out.iterations = iterations;
  return out;
}

std::vector<double> finite_difference_gradient(const Objective& f,
                                               std::span<const double> x,
                                               double h) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f.value(probe);
    probe[i] = x[i] - h;
    const double down = f.value(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace qcap::opt
