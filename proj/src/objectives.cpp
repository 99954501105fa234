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

#include "qcap/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "qcap/error.hpp"

namespace qcap {

ChannelKernel::ChannelKernel(const QuantumChannel& ch)
    : dim_in_(ch.dim_in()), dim_out_(ch.dim_out()), kraus_(ch.kraus()) {
  kraus_adjoint_.reserve(kraus_.size());
  for (const ComplexMatrix& a : kraus_) kraus_adjoint_.push_back(a.adjoint());
}

void ChannelKernel::outputs(const ComplexMatrix& rho, ComplexMatrix* out,
                            ComplexMatrix* env) const {
  const std::size_t n = kraus_.size();
  std::vector<ComplexMatrix> applied;
  applied.reserve(n);
  for (const ComplexMatrix& a : kraus_) applied.push_back(a * rho);
  if (out != nullptr) {
    *out = ComplexMatrix(dim_out_, dim_out_);
    for (std::size_t k = 0; k < n; ++k) *out += applied[k] * kraus_adjoint_[k];
  }
  if (env != nullptr) {
    *env = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto b = applied[k].entries();
      for (std::size_t l = 0; l < n; ++l) {
        const auto a = kraus_[l].entries();
        Complex s = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * std::conj(a[i]);
        (*env)(k, l) = s;
      }
    }
  }
}

ComplexMatrix ChannelKernel::adjoint_out(const ComplexMatrix& y) const {
  ComplexMatrix acc(dim_in_, dim_in_);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    acc += kraus_adjoint_[k] * (y * kraus_[k]);
  }
  return acc;
}

ComplexMatrix ChannelKernel::adjoint_env(const ComplexMatrix& y) const {
  const std::size_t n = kraus_.size();
  ComplexMatrix acc(dim_in_, dim_in_);
  ComplexMatrix mixed(dim_out_, dim_in_);
  for (std::size_t l = 0; l < n; ++l) {
    mixed *= 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex c = y(l, k);
      if (c == Complex(0.0)) continue;
      mixed += kraus_[k] * c;
    }
    acc += kraus_adjoint_[l] * mixed;
  }
  return acc;
}

EntropyWithLog entropy_with_log(const ComplexMatrix& m) {
  if (m.rows() == 1) return {0.0, ComplexMatrix(1, 1)};
  const EigenDecomposition eig = hermitian_eig(m);
  double s = 0.0;
  for (double l : eig.eigenvalues) {
    if (l > 0.0) s -= l * std::log2(l);
  }
  ComplexMatrix log = spectral_apply(
      eig, [](double l) { return l > kZeroTol ? std::log2(l) : 0.0; });
  return {s, std::move(log)};
}

ComplexMatrix unpack_factor(std::span<const double> x, std::size_t rows,
                            std::size_t cols) {
  ComplexMatrix g(rows, cols);
  auto e = g.entries();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = {x[2 * i], x[2 * i + 1]};
  return g;
}

void pack_factor(const ComplexMatrix& g, std::span<double> x) {
  const auto e = g.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    x[2 * i] = e[i].real();
    x[2 * i + 1] = e[i].imag();
  }
}

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - top);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

namespace {

struct FactorState {
  ComplexMatrix rho;
  double trace;
};

FactorState factor_state(const ComplexMatrix& g) {
  ComplexMatrix rho = g * g.adjoint();
  const double t = rho.trace().real();
  rho *= 1.0 / t;
  for (std::size_t i = 0; i < rho.rows(); ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < rho.cols(); ++j) {
      const Complex avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = avg;
      rho(j, i) = std::conj(avg);
    }
  }
  return {std::move(rho), t};
}

// Value of S(N(rho)) - c S(N^c(rho)) and, when requested, its gradient with
// respect to rho as a Hermitian matrix.
struct InfoTerm {
  double value;
  ComplexMatrix gamma;
};

InfoTerm info_term(const ChannelKernel& kernel, const ComplexMatrix& rho,
                   double env_weight, bool want_gamma) {
  ComplexMatrix out;
  ComplexMatrix env;
  kernel.outputs(rho, &out, env_weight != 0.0 ? &env : nullptr);
  const EntropyWithLog so = entropy_with_log(out);
  InfoTerm term{so.entropy, {}};
  if (want_gamma) term.gamma = kernel.adjoint_out(so.log_support) * -1.0;
  if (env_weight != 0.0) {
    const EntropyWithLog se = entropy_with_log(env);
    term.value -= env_weight * se.entropy;
    if (want_gamma) term.gamma += kernel.adjoint_env(se.log_support) * env_weight;
  }
  return term;
}

// d f / d G for rho = G G^dagger / t, given df/drho = gamma, written into grad
// as interleaved (Re, Im) pairs.
void factor_gradient(const ComplexMatrix& gamma, const FactorState& st,
                     const ComplexMatrix& g, std::span<double> grad) {
  const double shift = real_trace_of_product(gamma, st.rho);
  ComplexMatrix m = gamma;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= shift;
  const ComplexMatrix mg = m * g;
  const auto e = mg.entries();
  const double scale = 2.0 / st.trace;
  for (std::size_t i = 0; i < e.size(); ++i) {
    grad[2 * i] = scale * e[i].real();
    grad[2 * i + 1] = scale * e[i].imag();
  }
}

void require_rank(std::size_t rank, std::size_t dim) {
  if (rank == 0 || rank > dim) {
    throw Error(ErrorCode::kBadRank, "factor rank " + std::to_string(rank) +
                                         " for dimension " + std::to_string(dim));
  }
}

}  // namespace

SingleStateObjective::SingleStateObjective(const QuantumChannel& ch,
                                           std::size_t rank, double env_weight)
    : kernel_(ch), dim_(ch.dim_in()), rank_(rank), env_weight_(env_weight) {
  require_rank(rank, dim_);
}

double SingleStateObjective::evaluate(std::span<const double> x,
                                      std::span<double> grad) const {
  const ComplexMatrix g = unpack_factor(x, dim_, rank_);
  const FactorState st = factor_state(g);
  const InfoTerm term = info_term(kernel_, st.rho, env_weight_, !grad.empty());
  if (!grad.empty()) factor_gradient(term.gamma, st, g, grad);
  return term.value;
}

double SingleStateObjective::value(std::span<const double> x) const {
  return evaluate(x, {});
}

double SingleStateObjective::value_and_gradient(std::span<const double> x,
                                                std::span<double> grad) const {
  return evaluate(x, grad);
}

DensityMatrix SingleStateObjective::state(std::span<const double> x) const {
  return state_from_factor(unpack_factor(x, dim_, rank_));
}

EnsembleObjective::EnsembleObjective(const QuantumChannel& ch,
                                     std::size_t members, std::size_t rank,
                                     double env_weight)
    : kernel_(ch),
      dim_(ch.dim_in()),
      members_(members),
      rank_(rank),
      env_weight_(env_weight) {
  require_rank(rank, dim_);
  if (members == 0) throw Error(ErrorCode::kBadParam, "empty ensemble");
}

double EnsembleObjective::evaluate(std::span<const double> x,
                                   std::span<double> grad) const {
  const bool want = !grad.empty();
  const std::size_t block = 2 * dim_ * rank_;
  const std::vector<double> p = softmax(x.subspan(members_ * block, members_));

  std::vector<ComplexMatrix> factors;
  std::vector<FactorState> states;
  factors.reserve(members_);
  states.reserve(members_);
  ComplexMatrix avg(dim_, dim_);
  for (std::size_t k = 0; k < members_; ++k) {
    factors.push_back(unpack_factor(x.subspan(k * block, block), dim_, rank_));
    states.push_back(factor_state(factors.back()));
    avg += states.back().rho * p[k];
  }

  const InfoTerm whole = info_term(kernel_, avg, env_weight_, want);
  double value = whole.value;
  std::vector<double> h(members_);
  for (std::size_t k = 0; k < members_; ++k) {
    const InfoTerm part = info_term(kernel_, states[k].rho, env_weight_, want);
    value -= p[k] * part.value;
    if (!want) continue;
    h[k] = real_trace_of_product(whole.gamma, states[k].rho) - part.value;
    ComplexMatrix gamma = (whole.gamma - part.gamma) * p[k];
    factor_gradient(gamma, states[k], factors[k], grad.subspan(k * block, block));
  }
  if (want) {
    double mean = 0.0;
    for (std::size_t k = 0; k < members_; ++k) mean += p[k] * h[k];
    for (std::size_t k = 0; k < members_; ++k) {
      grad[members_ * block + k] = p[k] * (h[k] - mean);
    }
  }
  return value;
}

double EnsembleObjective::value(std::span<const double> x) const {
  return evaluate(x, {});
}

double EnsembleObjective::value_and_gradient(std::span<const double> x,
                                             std::span<double> grad) const {
  return evaluate(x, grad);
}

Ensemble EnsembleObjective::ensemble(std::span<const double> x) const {
  const std::size_t block = 2 * dim_ * rank_;
  const std::vector<double> p = softmax(x.subspan(members_ * block, members_));
  std::vector<EnsembleMember> members;
  members.reserve(members_);
  for (std::size_t k = 0; k < members_; ++k) {
    members.push_back(
        {p[k], state_from_factor(
                   unpack_factor(x.subspan(k * block, block), dim_, rank_))});
  }
  return Ensemble(std::move(members));
}

std::vector<double> EnsembleObjective::encode(
    const std::vector<ComplexMatrix>& factors,
    std::span<const double> probs) const {
  if (factors.size() != members_ || probs.size() != members_) {
    throw Error(ErrorCode::kShapeMismatch, "ensemble encoding size");
  }
  const std::size_t block = 2 * dim_ * rank_;
  std::vector<double> x(dimension());
  for (std::size_t k = 0; k < members_; ++k) {
    if (factors[k].rows() != dim_ || factors[k].cols() != rank_) {
      throw Error(ErrorCode::kShapeMismatch, "member factor shape");
    }
    pack_factor(factors[k], std::span<double>(x).subspan(k * block, block));
    x[members_ * block + k] = std::log(std::max(probs[k], 1e-12));
  }
  return x;
}

DivergenceObjective::DivergenceObjective(const QuantumChannel& ch,
                                         ComplexMatrix log_sigma)
    : kernel_(ch), dim_(ch.dim_in()), log_sigma_(std::move(log_sigma)) {
  if (log_sigma_.rows() != ch.dim_out() || log_sigma_.cols() != ch.dim_out()) {
    throw Error(ErrorCode::kDimMismatch, "reference state dimension");
  }
  pulled_log_sigma_ = kernel_.adjoint_out(log_sigma_);
}

double DivergenceObjective::evaluate(std::span<const double> x,
                                     std::span<double> grad) const {
  const ComplexMatrix g = unpack_factor(x, dim_, 1);
  const FactorState st = factor_state(g);
  ComplexMatrix out;
  kernel_.outputs(st.rho, &out, nullptr);
  const EntropyWithLog so = entropy_with_log(out);
  const double value = -so.entropy - real_trace_of_product(out, log_sigma_);
  if (!grad.empty()) {
    const ComplexMatrix gamma = kernel_.adjoint_out(so.log_support) -
                                pulled_log_sigma_;
    factor_gradient(gamma, st, g, grad);
  }
  return value;
}

double DivergenceObjective::value(std::span<const double> x) const {
  return evaluate(x, {});
}

double DivergenceObjective::value_and_gradient(std::span<const double> x,
                                               std::span<double> grad) const {
  return evaluate(x, grad);
}

}  // namespace qcap
