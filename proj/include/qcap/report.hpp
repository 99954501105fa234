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

// JSON forms of results. Non-finite reals are written as the strings "inf",
// "-inf" and "nan".

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qcap/capacity.hpp"
#include "qcap/matops.hpp"
#include "qcap/states.hpp"
#include "qcap/superactivation.hpp"
#include "qcap/verification.hpp"

namespace qcap {

nlohmann::json real_json(double v);
nlohmann::json matrix_json(const ComplexMatrix& m);
nlohmann::json state_json(const DensityMatrix& rho);
nlohmann::json ensemble_json(const Ensemble& e);
nlohmann::json config_json(const OptimizerConfig& cfg);
nlohmann::json capacity_json(const CapacityReport& r);
nlohmann::json factorization_json(const FactorizationReport& r);
nlohmann::json identity_checks_json(const std::vector<IdentityCheck>& checks);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

struct RunReport {
  std::string command;
  /// Input name -> {"source": ..., "sha256": ...}.
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::int64_t runtime_ms = 0;
  std::string tool_version;

  nlohmann::json to_json() const;
};

}  // namespace qcap
