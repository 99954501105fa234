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

// Command-line front end. Each command writes one JSON RunReport to `out` and
// a short summary to `err`.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcap/channels.hpp"

namespace qcap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitResourceCap = 3;

/// Version string written into every report.
const char* tool_version();

/**
 * "zoo:NAME(P1,...)" or a channel-spec file path. Fills digest with the
 * source text and the SHA-256 of the file bytes (or of the zoo spec).
 */
QuantumChannel resolve_channel(const std::string& spec, nlohmann::json& digest);

/// args[0] is the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qcap::cli
