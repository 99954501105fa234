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

#include "qcap/capacity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "qcap/entropy_measures.hpp"
#include "qcap/error.hpp"
#include "qcap/objectives.hpp"
#include "qcap/optimize.hpp"

namespace qcap {

void OptimizerConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kBadConfig, what);
  };
  if (restarts == 0) fail("restarts must be positive");
  if (max_iters == 0) fail("max_iters must be positive");
  if (!(step_init > 0.0) || !std::isfinite(step_init)) {
    fail("step_init must be positive");
  }
  if (!(conv_tol > 0.0)) fail("conv_tol must be positive");
  if (!(conv_tol < step_init)) fail("conv_tol must be below step_init");
  if (ensemble_size && *ensemble_size == 0) fail("ensemble_size must be positive");
  if (max_dim_in == 0) fail("max_dim_in must be positive");
  if (threads == 0) fail("threads must be positive");
}

std::string_view input_form_name(InputForm form) {
  return form == InputForm::kSingleState ? "single_state" : "ensemble";
}

Ensemble spectral_ensemble(const DensityMatrix& rho) {
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  const std::size_t n = rho.dim();
  double total = 0.0;
  for (double l : eig.eigenvalues) total += l > kZeroTol ? l : 0.0;
  std::vector<EnsembleMember> members;
  for (std::size_t k = n; k-- > 0;) {
    if (!(eig.eigenvalues[k] > kZeroTol)) continue;
    const double w = eig.eigenvalues[k] / total;
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = eig.eigenvectors(i, k);
    members.push_back({w, DensityMatrix::pure(v)});
  }
  return Ensemble(std::move(members));
}

Ensemble product_ensemble(const Ensemble& a, const Ensemble& b) {
  std::vector<EnsembleMember> members;
  members.reserve(a.size() * b.size());
  for (const EnsembleMember& x : a.members()) {
    for (const EnsembleMember& y : b.members()) {
      members.push_back({x.prob * y.prob,
                         validate_state(tensor(x.state.matrix(), y.state.matrix()))});
    }
  }
  return Ensemble(std::move(members));
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_dim(const QuantumChannel& ch, const OptimizerConfig& cfg) {
  if (ch.dim_in() > cfg.max_dim_in) {
    throw Error(ErrorCode::kDimTooLarge,
                "input dimension " + std::to_string(ch.dim_in()) +
                    " exceeds cap " + std::to_string(cfg.max_dim_in));
  }
}

opt::AscentOptions ascent_options(const OptimizerConfig& cfg) {
  opt::AscentOptions o;
  o.max_iters = cfg.max_iters;
  o.step_init = cfg.step_init;
  o.conv_tol = cfg.conv_tol;
  return o;
}

ComplexMatrix gaussian_factor(std::mt19937_64& rng, std::size_t rows,
                              std::size_t cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(rows, cols);
  for (Complex& z : g.entries()) {
    const double re = normal(rng);
    z = {re, normal(rng)};
  }
  return g;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any task is rethrown after all workers stop.
template <typename Fn>
void for_each_index(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct RestartOutcome {
  double single_value = kNegInf;
  double ensemble_value = kNegInf;
  std::optional<DensityMatrix> single;
  std::optional<Ensemble> ensemble;
  bool single_converged = false;
  bool ensemble_converged = false;
  std::size_t single_iters = 0;
  std::size_t ensemble_iters = 0;
};

double finite_or_neg_inf(double v) { return std::isfinite(v) ? v : kNegInf; }

// dim x 1 factor of the dominant eigenvector; exact for pure states.
ComplexMatrix pure_factor(const DensityMatrix& rho) {
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  const std::size_t n = rho.dim();
  ComplexMatrix g(n, 1);
  for (std::size_t i = 0; i < n; ++i) g(i, 0) = eig.eigenvectors(i, n - 1);
  return g;
}

RestartOutcome q1_restart(const QuantumChannel& ch, const OptimizerConfig& cfg,
                          const std::optional<WarmStart>& warm,
                          std::size_t restart) {
  const std::size_t d = ch.dim_in();
  const std::size_t members = cfg.ensemble_size.value_or(d * d);
  const opt::AscentOptions options = ascent_options(cfg);
  std::mt19937_64 rng(cfg.seed + restart);
  RestartOutcome out;

  // Single input state.
  {
    const SingleStateObjective objective(ch, d, 1.0);
    ComplexMatrix g;
    if (restart == 0) {
      g = ComplexMatrix::identity(d);
      g *= 1.0 / std::sqrt(static_cast<double>(d));
    } else if (restart == 1 && warm) {
      g = state_factor(warm->single);
    } else {
      g = gaussian_factor(rng, d, d);
    }
    std::vector<double> x0(objective.dimension());
    pack_factor(g, x0);
    const opt::AscentResult r = opt::maximize(objective, std::move(x0), options);
    DensityMatrix rho = objective.state(r.x);
    out.single_value = finite_or_neg_inf(coherent_information(rho, ch).value);
    out.single.emplace(std::move(rho));
    out.single_converged = r.converged;
    out.single_iters = r.iterations;
  }

  // Input ensemble of pure members.
  {
    std::vector<ComplexMatrix> factors;
    std::vector<double> probs;
    if (restart == 0) {
      for (std::size_t k = 0; k < members; ++k) {
        ComplexMatrix g(d, 1);
        g(k % d, 0) = 1.0;
        factors.push_back(std::move(g));
      }
      probs.assign(members, 1.0 / static_cast<double>(members));
    } else if (restart == 1 && warm) {
      for (const EnsembleMember& m : warm->ensemble.members()) {
        factors.push_back(pure_factor(m.state));
        probs.push_back(m.prob);
      }
    } else {
      for (std::size_t k = 0; k < members; ++k) {
        factors.push_back(gaussian_factor(rng, d, 1));
      }
      probs.assign(members, 1.0 / static_cast<double>(members));
    }
    const EnsembleObjective objective(ch, factors.size(), 1, 1.0);
    const opt::AscentResult r =
        opt::maximize(objective, objective.encode(factors, probs), options);
    Ensemble e = objective.ensemble(r.x);
    out.ensemble_value = finite_or_neg_inf(coherent_info_via_holevo(e, ch).value);
    out.ensemble.emplace(std::move(e));
    out.ensemble_converged = r.converged;
    out.ensemble_iters = r.iterations;
  }
  return out;
}

std::size_t argmax_first(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

CapacityReport q1(const QuantumChannel& ch, const OptimizerConfig& cfg,
                  const std::optional<WarmStart>& warm) {
  cfg.validate();
  require_dim(ch, cfg);
  if (warm && (warm->single.dim() != ch.dim_in() ||
               warm->ensemble.dim() != ch.dim_in())) {
    throw Error(ErrorCode::kDimMismatch, "warm start dimension");
  }

  std::vector<std::optional<RestartOutcome>> outcomes(cfg.restarts);
  for_each_index(cfg.restarts, cfg.threads, [&](std::size_t r) {
    outcomes[r] = q1_restart(ch, cfg, warm, r);
  });

  std::vector<double> singles(cfg.restarts);
  std::vector<double> ensembles(cfg.restarts);
  std::vector<double> per_restart(cfg.restarts);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    singles[r] = outcomes[r]->single_value;
    ensembles[r] = outcomes[r]->ensemble_value;
    per_restart[r] = std::max(singles[r], ensembles[r]);
  }
  const std::size_t bs = argmax_first(singles);
  const std::size_t be = argmax_first(ensembles);
  const RestartOutcome& s = *outcomes[bs];
  const RestartOutcome& e = *outcomes[be];
  // Rounding-level ensemble gains do not displace a single-state optimum.
  const bool ensemble_wins = e.ensemble_value > s.single_value + 1e-11;
  const double raw = std::max(s.single_value, e.ensemble_value);
  if (!std::isfinite(raw)) {
    throw Error(ErrorCode::kNoConvergence, "no restart produced a finite value");
  }

  return CapacityReport{
      .value = std::max(0.0, raw),
      .raw_value = raw,
      .optimal_input = ensemble_wins ? *e.ensemble : spectral_ensemble(*s.single),
      .optimal_single_state = *s.single,
      .per_restart_values = std::move(per_restart),
      .converged = ensemble_wins ? e.ensemble_converged : s.single_converged,
      .iterations_used = ensemble_wins ? e.ensemble_iters : s.single_iters,
      .single_value = s.single_value,
      .ensemble_value = e.ensemble_value,
      .best_form = ensemble_wins ? InputForm::kEnsemble : InputForm::kSingleState,
      .copies = 1,
      .unnormalized_value = raw,
      .certificate_gap = std::nullopt,
      .component_values = {},
  };
}

namespace {

struct HolevoOutcome {
  std::optional<Ensemble> ensemble;
  double chi = kNegInf;
  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t iterations = 0;
};

// Pure members as packed d x 1 factors with their weights.
struct PureEnsemble {
  std::vector<std::vector<double>> members;
  std::vector<double> probs;
};

PureEnsemble unpack_pure(std::span<const double> x, std::size_t count,
                         std::size_t d) {
  PureEnsemble e;
  for (std::size_t k = 0; k < count; ++k) {
    const auto block = x.subspan(2 * d * k, 2 * d);
    e.members.emplace_back(block.begin(), block.end());
  }
  e.probs = softmax(x.subspan(2 * d * count, count));
  return e;
}

struct Evaluation {
  double chi;
  ComplexMatrix log_sigma;
  std::vector<double> divergences;  // D(N(psi_k) || sigma) on supports
};

Evaluation evaluate_pure(const ChannelKernel& kernel, const PureEnsemble& e) {
  const std::size_t d = kernel.dim_in();
  std::vector<ComplexMatrix> outs(e.members.size());
  ComplexMatrix sigma(kernel.dim_out(), kernel.dim_out());
  for (std::size_t k = 0; k < e.members.size(); ++k) {
    const ComplexMatrix g = unpack_factor(e.members[k], d, 1);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    kernel.outputs(rho, &outs[k], nullptr);
    sigma += outs[k] * e.probs[k];
  }
  EntropyWithLog s = entropy_with_log(sigma);
  Evaluation ev{s.entropy, std::move(s.log_support), {}};
  ev.divergences.resize(outs.size());
  for (std::size_t k = 0; k < outs.size(); ++k) {
    const double sk = entropy_of(outs[k]);
    ev.chi -= e.probs[k] * sk;
    ev.divergences[k] = -sk - real_trace_of_product(outs[k], ev.log_sigma);
  }
  return ev;
}

// Blahut-Arimoto updates p_k <- p_k 2^{D_k} / Z with members held fixed.
void polish_weights(const ChannelKernel& kernel, PureEnsemble& e,
                    double target, std::size_t max_steps) {
  Evaluation ev = evaluate_pure(kernel, e);
  for (std::size_t step = 0; step < max_steps; ++step) {
    double spread = 0.0;
    for (std::size_t k = 0; k < e.probs.size(); ++k) {
      if (e.probs[k] > 1e-12) spread = std::max(spread, ev.divergences[k] - ev.chi);
    }
    if (spread <= target) return;
    const double top = *std::max_element(ev.divergences.begin(), ev.divergences.end());
    PureEnsemble next = e;
    double sum = 0.0;
    for (std::size_t k = 0; k < next.probs.size(); ++k) {
      next.probs[k] *= std::exp2(ev.divergences[k] - top);
      sum += next.probs[k];
    }
    for (double& p : next.probs) p /= sum;
    Evaluation next_ev = evaluate_pure(kernel, next);
    if (!(next_ev.chi >= ev.chi)) return;
    e = std::move(next);
    ev = std::move(next_ev);
  }
}

std::vector<double> random_pure(std::mt19937_64& rng, std::size_t d) {
  std::vector<double> x(2 * d);
  pack_factor(gaussian_factor(rng, d, 1), x);
  return x;
}

std::vector<double> pack_pure(const PureEnsemble& e) {
  std::vector<double> x;
  for (const auto& m : e.members) x.insert(x.end(), m.begin(), m.end());
  for (double p : e.probs) x.push_back(std::log(std::max(p, 1e-300)));
  return x;
}

HolevoOutcome holevo_restart(const QuantumChannel& ch,
                             const OptimizerConfig& cfg, std::size_t restart) {
  const std::size_t d = ch.dim_in();
  const std::size_t count = cfg.ensemble_size.value_or(d * d);
  const ChannelKernel kernel(ch);
  const EnsembleObjective objective(ch, count, 1, 0.0);
  std::mt19937_64 rng(cfg.seed + restart);

  std::vector<ComplexMatrix> factors;
  for (std::size_t k = 0; k < count; ++k) {
    if (restart == 0) {
      ComplexMatrix g(d, 1);
      g(k % d, 0) = 1.0;
      factors.push_back(std::move(g));
    } else {
      factors.push_back(gaussian_factor(rng, d, 1));
    }
  }
  const std::vector<double> uniform(count, 1.0 / static_cast<double>(count));
  std::vector<double> x = objective.encode(factors, uniform);

  const double target = 10.0 * cfg.conv_tol;
  opt::AscentOptions coarse = ascent_options(cfg);
  opt::AscentOptions fine = coarse;
  fine.conv_tol = std::min(cfg.conv_tol, 1e-15);
  opt::AscentOptions probe = fine;
  probe.max_iters = std::min<std::size_t>(cfg.max_iters, 200);
  const std::size_t probes = 2 * d;
  constexpr std::size_t kRounds = 8;

  HolevoOutcome out;
  std::size_t used = 0;
  for (std::size_t round = 0; round < kRounds && used < cfg.max_iters; ++round) {
    // Ascent on chi moves every member along the gradient of its divergence
    // from the average output and re-weights toward the larger divergences.
    coarse.max_iters = cfg.max_iters - used;
    opt::AscentResult r = opt::maximize(objective, std::move(x), coarse);
    used += r.iterations;
    x = std::move(r.x);
    if (used < cfg.max_iters) {
      fine.max_iters = cfg.max_iters - used;
      r = opt::maximize(objective, std::move(x), fine);
      used += r.iterations;
      x = std::move(r.x);
    }
    PureEnsemble e = unpack_pure(x, count, d);
    polish_weights(kernel, e, 0.1 * target, 500);
    x = pack_pure(e);

    const Evaluation ev = evaluate_pure(kernel, e);
    const DivergenceObjective divergence(ch, ev.log_sigma);
    double radius = kNegInf;
    std::vector<double> escape;
    for (std::size_t t = 0; t < probes; ++t) {
      const opt::AscentResult pr =
          opt::maximize(divergence, random_pure(rng, d), probe);
      if (pr.value > radius) {
        radius = pr.value;
        escape = pr.x;
      }
    }
    for (double dk : ev.divergences) radius = std::max(radius, dk);
    if (radius - ev.chi <= target) {
      out.converged = true;
      break;
    }
    // Bring the escaping state in with a small weight in place of the
    // lightest member.
    const std::size_t lightest = static_cast<std::size_t>(
        std::min_element(e.probs.begin(), e.probs.end()) - e.probs.begin());
    if (!escape.empty()) {
      std::copy(escape.begin(), escape.end(), x.begin() + 2 * d * lightest);
      const double heaviest = *std::max_element(e.probs.begin(), e.probs.end());
      x[2 * d * count + lightest] = std::log(heaviest) - 8.0;
    }
  }
  out.iterations = used;

  Ensemble result = objective.ensemble(x);
  out.chi = finite_or_neg_inf(holevo_chi(result, ch));

  // Certificate with the public relative entropy: members plus fresh probes.
  const DensityMatrix sigma = apply(ch, average_state(result));
  const DivergenceObjective divergence(ch, matrix_log_on_support(sigma.matrix()));
  double radius = kNegInf;
  auto consider = [&](std::vector<double> x0) {
    const opt::AscentResult r = opt::maximize(divergence, std::move(x0), probe);
    const DensityMatrix psi = state_from_factor(unpack_factor(r.x, d, 1));
    radius = std::max(radius, relative_entropy(apply(ch, psi), sigma).value);
  };
  for (const EnsembleMember& m : result.members()) {
    // Members below this weight cannot move the average by a resolvable amount.
    if (m.prob < 1e-12) continue;
    radius = std::max(radius, relative_entropy(apply(ch, m.state), sigma).value);
  }
  std::mt19937_64 probe_rng(cfg.seed + restart + 0x9e3779b97f4a7c15ULL);
  for (std::size_t t = 0; t < probes; ++t) consider(random_pure(probe_rng, d));
  out.gap = std::max(0.0, radius - out.chi);
  if (out.gap > target) out.converged = false;
  out.ensemble.emplace(std::move(result));
  return out;
}

}  // namespace

CapacityReport holevo_minimax(const QuantumChannel& ch,
                              const OptimizerConfig& cfg) {
  cfg.validate();
  require_dim(ch, cfg);
  std::vector<std::optional<HolevoOutcome>> outcomes(cfg.restarts);
  for_each_index(cfg.restarts, cfg.threads, [&](std::size_t r) {
    outcomes[r] = holevo_restart(ch, cfg, r);
  });
  std::vector<double> per_restart(cfg.restarts);
  for (std::size_t r = 0; r < cfg.restarts; ++r) per_restart[r] = outcomes[r]->chi;
  const HolevoOutcome& best = *outcomes[argmax_first(per_restart)];
  const double raw = best.chi;
  if (!std::isfinite(raw)) {
    throw Error(ErrorCode::kNoConvergence, "no restart produced a finite value");
  }
  return CapacityReport{
      .value = std::max(0.0, raw),
      .raw_value = raw,
      .optimal_input = *best.ensemble,
      .optimal_single_state = average_state(*best.ensemble),
      .per_restart_values = std::move(per_restart),
      .converged = best.converged,
      .iterations_used = best.iterations,
      .single_value = raw,
      .ensemble_value = raw,
      .best_form = InputForm::kEnsemble,
      .copies = 1,
      .unnormalized_value = raw,
      .certificate_gap = best.gap,
      .component_values = {},
  };
}

JointCapacity joint_q1_detailed(const QuantumChannel& a, const QuantumChannel& b,
                                const OptimizerConfig& cfg) {
  cfg.validate();
  if (a.dim_in() * b.dim_in() > cfg.max_dim_in) {
    throw Error(ErrorCode::kDimTooLarge,
                "joint input dimension " + std::to_string(a.dim_in() * b.dim_in()) +
                    " exceeds cap " + std::to_string(cfg.max_dim_in));
  }
  CapacityReport ra = q1(a, cfg);
  CapacityReport rb = q1(b, cfg);
  const QuantumChannel joint = tensor_channels(a, b);
  WarmStart warm{
      validate_state(tensor(ra.optimal_single_state.matrix(),
                            rb.optimal_single_state.matrix())),
      product_ensemble(ra.optimal_input, rb.optimal_input)};
  CapacityReport rj = q1(joint, cfg, warm);
  rj.component_values = {ra.value, rb.value};
  return {std::move(rj), std::move(ra), std::move(rb)};
}

CapacityReport joint_q1(const QuantumChannel& a, const QuantumChannel& b,
                        const OptimizerConfig& cfg) {
  return joint_q1_detailed(a, b, cfg).joint;
}

CapacityReport n_copy_q1(const QuantumChannel& ch, std::size_t n,
                         const OptimizerConfig& cfg) {
  cfg.validate();
  if (n == 0 || n > 3) {
    throw Error(ErrorCode::kBadParam, "copies must be 1, 2 or 3");
  }
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= ch.dim_in();
  if (dim > cfg.max_dim_in) {
    throw Error(ErrorCode::kDimTooLarge,
                "input dimension " + std::to_string(dim) + " for " +
                    std::to_string(n) + " copies exceeds cap " +
                    std::to_string(cfg.max_dim_in));
  }
  CapacityReport single = q1(ch, cfg);
  if (n == 1) return single;

  DensityMatrix rho = single.optimal_single_state;
  Ensemble ens = single.optimal_input;
  for (std::size_t i = 1; i < n; ++i) {
    rho = validate_state(tensor(rho.matrix(), single.optimal_single_state.matrix()));
    ens = product_ensemble(ens, single.optimal_input);
  }
  CapacityReport r = q1(tensor_power(ch, n), cfg, WarmStart{rho, ens});
  const double scale = 1.0 / static_cast<double>(n);
  r.unnormalized_value = r.raw_value;
  r.raw_value *= scale;
  r.value = std::max(0.0, r.raw_value);
  r.single_value *= scale;
  r.ensemble_value *= scale;
  for (double& v : r.per_restart_values) v *= scale;
  r.copies = n;
  return r;
}

}  // namespace qcap
