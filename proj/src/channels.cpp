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

#include "qcap/channels.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "qcap/error.hpp"

namespace qcap {

QuantumChannel::QuantumChannel(std::size_t dim_in, std::size_t dim_out,
                               std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ == 0 || dim_out_ == 0) {
    throw Error(ErrorCode::kBadDims, "channel dimensions must be positive");
  }
  if (kraus_.empty() || kraus_.size() > dim_in_ * dim_out_) {
    throw Error(ErrorCode::kBadParam,
                "Kraus count " + std::to_string(kraus_.size()) +
                    " outside [1, dim_in * dim_out]");
  }
  for (const ComplexMatrix& a : kraus_) {
    if (a.rows() != dim_out_ || a.cols() != dim_in_) {
      throw Error(ErrorCode::kShapeMismatch,
                  "Kraus operator is " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + ", expected " +
                      std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
    }
  }
  const double defect = completeness_defect();
  if (!(defect <= kCompletenessTol)) {
    throw Error(ErrorCode::kCompletenessViolation,
                "||sum A^dagger A - I||_F = " + std::to_string(defect));
  }
}

double QuantumChannel::completeness_defect() const {
  ComplexMatrix sum(dim_in_, dim_in_);
  for (const ComplexMatrix& a : kraus_) sum += a.adjoint() * a;
  return frobenius_distance(sum, ComplexMatrix::identity(dim_in_));
}

ComplexMatrix apply_raw(const QuantumChannel& ch, const ComplexMatrix& m) {
  if (m.rows() != ch.dim_in() || m.cols() != ch.dim_in()) {
    throw Error(ErrorCode::kDimMismatch,
                "input dim " + std::to_string(m.rows()) + ", channel expects " +
                    std::to_string(ch.dim_in()));
  }
  ComplexMatrix out(ch.dim_out(), ch.dim_out());
  for (const ComplexMatrix& a : ch.kraus()) out += a * m * a.adjoint();
  return out;
}

ComplexMatrix apply_adjoint_raw(const QuantumChannel& ch,
                                const ComplexMatrix& y) {
  if (y.rows() != ch.dim_out() || y.cols() != ch.dim_out()) {
    throw Error(ErrorCode::kDimMismatch, "adjoint input dimension");
  }
  ComplexMatrix out(ch.dim_in(), ch.dim_in());
  for (const ComplexMatrix& a : ch.kraus()) out += a.adjoint() * y * a;
  return out;
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
  return validate_state(apply_raw(ch, rho.matrix()));
}

ComplexMatrix stinespring_isometry(const QuantumChannel& ch) {
  const std::size_t env = ch.env_dim();
  ComplexMatrix v(ch.dim_out() * env, ch.dim_in());
  for (std::size_t k = 0; k < env; ++k) {
    const ComplexMatrix& a = ch.kraus()[k];
    for (std::size_t o = 0; o < ch.dim_out(); ++o) {
      for (std::size_t i = 0; i < ch.dim_in(); ++i) v(o * env + k, i) = a(o, i);
    }
  }
  return v;
}

QuantumChannel complementary(const QuantumChannel& ch) {
  const std::size_t env = ch.env_dim();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ch.dim_out());
  for (std::size_t j = 0; j < ch.dim_out(); ++j) {
    ComplexMatrix b(env, ch.dim_in());
    for (std::size_t k = 0; k < env; ++k) {
      for (std::size_t i = 0; i < ch.dim_in(); ++i) b(k, i) = ch.kraus()[k](j, i);
    }
    kraus.push_back(std::move(b));
  }
  return QuantumChannel(ch.dim_in(), env, std::move(kraus));
}

QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b,
                               std::size_t max_dim) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.env_dim() * b.env_dim());
  for (const ComplexMatrix& ka : a.kraus()) {
    for (const ComplexMatrix& kb : b.kraus()) kraus.push_back(tensor(ka, kb, max_dim));
  }
  return QuantumChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                        std::move(kraus));
}

QuantumChannel tensor_power(const QuantumChannel& ch, std::size_t n,
                            std::size_t max_dim) {
  if (n == 0) throw Error(ErrorCode::kBadParam, "tensor power needs n >= 1");
  QuantumChannel out = ch;
  for (std::size_t k = 1; k < n; ++k) out = tensor_channels(out, ch, max_dim);
  return out;
}

ComplexMatrix choi_matrix(const QuantumChannel& ch) {
  const std::size_t din = ch.dim_in();
  const std::size_t dout = ch.dim_out();
  ComplexMatrix choi(din * dout, din * dout);
  for (const ComplexMatrix& a : ch.kraus()) {
    // (I (x) A)|Phi>, |Phi> = sum_i |i>|i> unnormalized.
    for (std::size_t i = 0; i < din; ++i) {
      for (std::size_t j = 0; j < din; ++j) {
        for (std::size_t o = 0; o < dout; ++o) {
          for (std::size_t p = 0; p < dout; ++p) {
            choi(i * dout + o, j * dout + p) += a(o, i) * std::conj(a(p, j));
          }
        }
      }
    }
  }
  return choi;
}

namespace {

double require_probability(std::string_view name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kBadParam, std::string(name) + " parameter " +
                                          std::to_string(p) + " outside [0,1]");
  }
  return p;
}

std::size_t require_dimension(double d) {
  if (!(d >= 1.0) || d != std::floor(d) || d > 4096.0) {
    throw Error(ErrorCode::kBadParam,
                "dimension " + std::to_string(d) + " is not a positive integer");
  }
  return static_cast<std::size_t>(d);
}

void require_arity(std::string_view name, std::span<const double> params,
                   std::size_t arity) {
  if (params.size() != arity) {
    throw Error(ErrorCode::kBadParam,
                std::string(name) + " takes " + std::to_string(arity) +
                    " parameter(s), got " + std::to_string(params.size()));
  }
}

}  // namespace

QuantumChannel zoo(std::string_view name, std::span<const double> params) {
  if (name == "identity") {
    require_arity(name, params, 1);
    const std::size_t d = require_dimension(params[0]);
    return QuantumChannel(d, d, {ComplexMatrix::identity(d)});
  }
  if (name == "erasure") {
    require_arity(name, params, 2);
    const std::size_t d = require_dimension(params[0]);
    const double p = require_probability(name, params[1]);
    std::vector<ComplexMatrix> kraus;
    ComplexMatrix keep(d + 1, d);
    for (std::size_t i = 0; i < d; ++i) keep(i, i) = std::sqrt(1.0 - p);
    kraus.push_back(std::move(keep));
    for (std::size_t i = 0; i < d; ++i) {
      ComplexMatrix flag(d + 1, d);
      flag(d, i) = std::sqrt(p);
      kraus.push_back(std::move(flag));
    }
    return QuantumChannel(d, d + 1, std::move(kraus));
  }
  if (name == "depolarizing") {
    require_arity(name, params, 1);
    const double p = require_probability(name, params[0]);
    const double a = std::sqrt(1.0 - 0.75 * p);
    const double b = std::sqrt(0.25 * p);
    const Complex i(0.0, 1.0);
    return QuantumChannel(
        2, 2,
        {ComplexMatrix::from_rows({{a, 0.0}, {0.0, a}}),
         ComplexMatrix::from_rows({{0.0, b}, {b, 0.0}}),
         ComplexMatrix::from_rows({{0.0, -i * b}, {i * b, 0.0}}),
         ComplexMatrix::from_rows({{b, 0.0}, {0.0, -b}})});
  }
  if (name == "amplitude_damping") {
    require_arity(name, params, 1);
    const double g = require_probability(name, params[0]);
    return QuantumChannel(
        2, 2,
        {ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, std::sqrt(1.0 - g)}}),
         ComplexMatrix::from_rows({{0.0, std::sqrt(g)}, {0.0, 0.0}})});
  }
  if (name == "phase_damping") {
    require_arity(name, params, 1);
    const double l = require_probability(name, params[0]);
    return QuantumChannel(
        2, 2,
        {ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, std::sqrt(1.0 - l)}}),
         ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, std::sqrt(l)}})});
  }
  throw Error(ErrorCode::kUnknownChannel, std::string(name));
}

QuantumChannel zoo_from_spec(std::string_view spec) {
  const std::size_t open = spec.find('(');
  if (open == std::string_view::npos || spec.back() != ')') {
    throw Error(ErrorCode::kParseError,
                "expected NAME(P1,...), got '" + std::string(spec) + "'");
  }
  const std::string_view name = spec.substr(0, open);
  std::string_view body = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<double> params;
  while (!body.empty()) {
    const std::size_t comma = body.find(',');
    std::string_view token = body.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw Error(ErrorCode::kParseError,
                  "bad parameter '" + std::string(token) + "'");
    }
    params.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return zoo(name, params);
}

}  // namespace qcap
