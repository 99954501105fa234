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

#include "qcap/report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <stdexcept>

namespace qcap {

using nlohmann::json;

json real_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json state_json(const DensityMatrix& rho) {
  return {{"dim", rho.dim()}, {"matrix", matrix_json(rho.matrix())}};
}

json ensemble_json(const Ensemble& e) {
  json members = json::array();
  for (const EnsembleMember& m : e.members()) {
    members.push_back({{"prob", m.prob}, {"state", state_json(m.state)}});
  }
  return members;
}

json config_json(const OptimizerConfig& cfg) {
  return {
      {"restarts", cfg.restarts},
      {"max_iters", cfg.max_iters},
      {"step_init", cfg.step_init},
      {"conv_tol", cfg.conv_tol},
      {"ensemble_size",
       cfg.ensemble_size ? json(*cfg.ensemble_size) : json("dim_in^2")},
      {"seed", cfg.seed},
      {"max_dim_in", cfg.max_dim_in},
  };
}

json capacity_json(const CapacityReport& r) {
  json per_restart = json::array();
  for (double v : r.per_restart_values) per_restart.push_back(real_json(v));
  json components = json::array();
  for (double v : r.component_values) components.push_back(real_json(v));
  return {
      {"value", real_json(r.value)},
      {"raw_value", real_json(r.raw_value)},
      {"single_value", real_json(r.single_value)},
      {"ensemble_value", real_json(r.ensemble_value)},
      {"best_form", input_form_name(r.best_form)},
      {"copies", r.copies},
      {"unnormalized_value", real_json(r.unnormalized_value)},
      {"per_restart_values", std::move(per_restart)},
      {"converged", r.converged},
      {"iterations_used", r.iterations_used},
      {"certificate_gap",
       r.certificate_gap ? real_json(*r.certificate_gap) : json(nullptr)},
      {"component_values", std::move(components)},
      {"optimal_input", ensemble_json(r.optimal_input)},
      {"optimal_single_state", state_json(r.optimal_single_state)},
  };
}

json factorization_json(const FactorizationReport& r) {
  auto optional_real = [](const std::optional<double>& v) {
    return v ? real_json(*v) : json(nullptr);
  };
  return {
      {"verdict", verdict_name(r.verdict)},
      {"both_zero", r.both_zero},
      {"additivity_gap", real_json(r.additivity_gap)},
      {"value_a", real_json(r.value_a)},
      {"value_b", real_json(r.value_b)},
      {"joint_value", real_json(r.joint_value)},
      {"joint_form", input_form_name(r.joint_form)},
      {"joint_converged", r.joint_converged},
      {"schmidt_coeffs_optimal", r.schmidt_coeffs_optimal},
      {"schmidt_coeffs_average", r.schmidt_coeffs_average},
      {"product_residual_optimal", real_json(r.product_residual_optimal)},
      {"product_residual_average", real_json(r.product_residual_average)},
      {"negativity_optimal", real_json(r.negativity_optimal)},
      {"divergence_split",
       {{"ab", optional_real(r.divergence_split.ab)},
        {"ae", optional_real(r.divergence_split.ae)},
        {"difference", optional_real(r.divergence_split.difference)}}},
      {"joint_optimal_input", state_json(r.joint_optimal_input)},
      {"joint_average_output", state_json(r.joint_average_output)},
  };
}

json identity_checks_json(const std::vector<IdentityCheck>& checks) {
  json out = json::array();
  for (const IdentityCheck& c : checks) {
    out.push_back({{"name", c.name},
                   {"trials", c.trials},
                   {"max_deviation", real_json(c.max_deviation)},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

json RunReport::to_json() const {
  return {
      {"command", command},
      {"inputs", inputs},
      {"config", config},
      {"results", results},
      {"runtime_ms", runtime_ms},
      {"tool_version", tool_version},
  };
}

}  // namespace qcap
