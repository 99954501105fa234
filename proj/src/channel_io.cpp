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

// Reading and writing the channel-spec and state-spec JSON files.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qcap/channels.hpp"
#include "qcap/error.hpp"

namespace qcap {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& rows, std::size_t expect_rows,
                               std::size_t expect_cols, const std::string& what) {
  if (!rows.is_array() || rows.size() != expect_rows) {
    throw Error(ErrorCode::kParseError,
                what + ": expected " + std::to_string(expect_rows) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(expect_rows * expect_cols);
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != expect_cols) {
      throw Error(ErrorCode::kParseError,
                  what + ": expected " + std::to_string(expect_cols) + " columns");
    }
    for (const json& z : row) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() ||
          !z[1].is_number()) {
        throw Error(ErrorCode::kParseError, what + ": entries must be [re, im]");
      }
      entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
  }
  return ComplexMatrix(expect_rows, expect_cols, std::move(entries));
}

std::size_t positive_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() ||
      doc[key].get<long long>() <= 0) {
    throw Error(ErrorCode::kParseError,
                std::string("'") + key + "' must be a positive integer");
  }
  return doc[key].get<std::size_t>();
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string channel_to_json(const QuantumChannel& ch) {
  json doc;
  doc["dim_in"] = ch.dim_in();
  doc["dim_out"] = ch.dim_out();
  json kraus = json::array();
  for (const ComplexMatrix& a : ch.kraus()) kraus.push_back(matrix_to_json(a));
  doc["kraus"] = std::move(kraus);
  return doc.dump();
}

QuantumChannel channel_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "expected an object");
  const std::size_t dim_in = positive_int(doc, "dim_in");
  const std::size_t dim_out = positive_int(doc, "dim_out");
  if (!doc.contains("kraus") || !doc["kraus"].is_array()) {
    throw Error(ErrorCode::kParseError, "'kraus' must be an array");
  }
  std::vector<ComplexMatrix> kraus;
  std::size_t index = 0;
  for (const json& a : doc["kraus"]) {
    kraus.push_back(matrix_from_json(a, dim_out, dim_in,
                                     "kraus[" + std::to_string(index++) + "]"));
  }
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

QuantumChannel load_channel(const std::filesystem::path& path) {
  return channel_from_json(read_file(path));
}

void save_channel(const QuantumChannel& ch, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path.string());
  out << channel_to_json(ch) << '\n';
}

DensityMatrix state_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "expected an object");
  const std::size_t dim = positive_int(doc, "dim");
  if (!doc.contains("matrix")) {
    throw Error(ErrorCode::kParseError, "'matrix' is missing");
  }
  return validate_state(matrix_from_json(doc["matrix"], dim, dim, "matrix"));
}

std::string state_to_json(const DensityMatrix& rho) {
  json doc;
  doc["dim"] = rho.dim();
  doc["matrix"] = matrix_to_json(rho.matrix());
  return doc.dump();
}

DensityMatrix load_state(const std::filesystem::path& path) {
  return state_from_json(read_file(path));
}

}  // namespace qcap
