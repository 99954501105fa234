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

#include "qcap/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iterator>
#include <sstream>

#include "qcap/capacity.hpp"
#include "qcap/entropy_measures.hpp"
#include "qcap/error.hpp"
#include "qcap/report.hpp"
#include "qcap/superactivation.hpp"
#include "qcap/verification.hpp"

#ifndef QCAP_VERSION
#define QCAP_VERSION "0.0.0"
#endif

namespace qcap::cli {

using nlohmann::json;

const char* tool_version() { return QCAP_VERSION; }

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

DensityMatrix resolve_state(const std::string& path, json& digest) {
  const std::string text = read_file(path);
  digest = {{"source", path}, {"sha256", sha256_hex(text)}};
  return state_from_json(text);
}

struct OptimizerFlags {
  OptimizerConfig cfg;
  std::size_t ensemble_size = 0;  // 0: dim_in^2

  void attach(CLI::App* cmd) {
    cmd->add_option("--restarts", cfg.restarts, "Independent optimizer restarts")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Base seed; restart r uses seed + r")
        ->capture_default_str();
    cmd->add_option("--tol", cfg.conv_tol, "Convergence tolerance")
        ->capture_default_str();
    cmd->add_option("--max-iters", cfg.max_iters, "Iteration cap per ascent")
        ->capture_default_str();
    cmd->add_option("--step-init", cfg.step_init, "Initial ascent step")
        ->capture_default_str();
    cmd->add_option("--ensemble-size", ensemble_size,
                    "Members per ensemble (default dim_in^2)");
    cmd->add_option("--max-dim", cfg.max_dim_in, "Largest accepted input dimension")
        ->capture_default_str();
    cmd->add_option("--threads", cfg.threads, "Worker threads for restarts")
        ->capture_default_str();
  }

  OptimizerConfig resolved() const {
    OptimizerConfig c = cfg;
    if (ensemble_size != 0) c.ensemble_size = ensemble_size;
    c.validate();
    return c;
  }
};

using Clock = std::chrono::steady_clock;

void emit(RunReport& report, Clock::time_point start, std::ostream& out) {
  report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          Clock::now() - start)
                          .count();
  report.tool_version = tool_version();
  out << report.to_json().dump(2) << '\n';
}

std::string format_real(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::ostringstream s;
  s.precision(10);
  s << v.get<double>();
  return s.str();
}

}  // namespace

QuantumChannel resolve_channel(const std::string& spec, json& digest) {
  constexpr std::string_view kZoo = "zoo:";
  if (spec.rfind(kZoo, 0) == 0) {
    const std::string body = spec.substr(kZoo.size());
    digest = {{"source", spec}, {"sha256", sha256_hex(spec)}};
    return zoo_from_spec(body);
  }
  const std::string text = read_file(spec);
  digest = {{"source", spec}, {"sha256", sha256_hex(text)}};
  return channel_from_json(text);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Entropic capacity measures and superactivation analysis"};
  app.require_subcommand(1);

  CLI::App* entropy = app.add_subcommand(
      "entropy", "Von Neumann entropy of a state and relative entropy to another");
  std::string state_path;
  std::string sigma_path;
  entropy->add_option("--state", state_path, "State-spec file")->required();
  entropy->add_option("--sigma", sigma_path, "Reference state-spec file");

  CLI::App* capacity = app.add_subcommand(
      "capacity", "Single-use quantum capacity lower bound, optionally per copy");
  std::string channel_spec;
  std::size_t copies = 1;
  OptimizerFlags capacity_flags;
  capacity->add_option("--channel", channel_spec, "FILE or zoo:NAME(PARAMS)")
      ->required();
  capacity->add_option("--copies", copies, "Channel uses optimized jointly (1-3)")
      ->capture_default_str();
  capacity_flags.attach(capacity);

  CLI::App* holevo = app.add_subcommand(
      "holevo", "Holevo capacity with a divergence-radius certificate");
  OptimizerFlags holevo_flags;
  holevo->add_option("--channel", channel_spec, "FILE or zoo:NAME(PARAMS)")
      ->required();
  holevo_flags.attach(holevo);

  CLI::App* superactivation = app.add_subcommand(
      "superactivation", "Joint capacity of a channel pair with product tests");
  std::string channel_a;
  std::string channel_b;
  OptimizerFlags pair_flags;
  AnalysisOptions analysis;
  superactivation->add_option("--channel-a", channel_a, "FILE or zoo:NAME(PARAMS)")
      ->required();
  superactivation->add_option("--channel-b", channel_b, "FILE or zoo:NAME(PARAMS)")
      ->required();
  superactivation->add_option("--gap-tol", analysis.gap_tol,
                              "Joint gain (bits) flagged as a candidate")
      ->capture_default_str();
  superactivation->add_option("--zero-cap-tol", analysis.zero_cap_tol,
                              "Single-channel value treated as zero")
      ->capture_default_str();
  superactivation->add_option("--product-tol", analysis.product_tol,
                              "Product residual accepted as a product")
      ->capture_default_str();
  pair_flags.attach(superactivation);

  CLI::App* verify = app.add_subcommand("verify", "Randomized identity suites");
  std::string suite;
  std::size_t trials = 100;
  std::uint64_t verify_seed = 0;
  verify->add_option("--suite", suite, "factorization or identities")
      ->required()
      ->check(CLI::IsMember({"factorization", "identities"}));
  verify->add_option("--trials", trials, "Random trials")->capture_default_str();
  verify->add_option("--seed", verify_seed, "Seed")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const Clock::time_point start = Clock::now();
  RunReport report;
  try {
    if (entropy->parsed()) {
      report.command = "entropy";
      json digest;
      const DensityMatrix rho = resolve_state(state_path, digest);
      report.inputs["state"] = digest;
      const double s = von_neumann_entropy(rho);
      report.results["entropy"] = real_json(s);
      report.results["relative_entropy"] = nullptr;
      report.results["support_violation"] = nullptr;
      err << "S(state) = " << format_real(real_json(s));
      if (!sigma_path.empty()) {
        const DensityMatrix sigma = resolve_state(sigma_path, digest);
        report.inputs["sigma"] = digest;
        const RelEntResult d = relative_entropy(rho, sigma);
        report.results["relative_entropy"] = real_json(d.value);
        report.results["support_violation"] = d.support_violation;
        err << ", D(state||sigma) = " << format_real(real_json(d.value));
      }
      err << '\n';
    } else if (capacity->parsed()) {
      report.command = "capacity";
      const OptimizerConfig cfg = capacity_flags.resolved();
      json digest;
      const QuantumChannel ch = resolve_channel(channel_spec, digest);
      report.inputs["channel"] = digest;
      report.config = config_json(cfg);
      const CapacityReport r =
          copies == 1 ? q1(ch, cfg) : n_copy_q1(ch, copies, cfg);
      report.results = capacity_json(r);
      err << "capacity: " << format_real(real_json(r.value))
          << " bits per use (" << input_form_name(r.best_form) << ", copies "
          << r.copies << (r.converged ? ", converged" : ", not converged")
          << ")\n";
    } else if (holevo->parsed()) {
      report.command = "holevo";
      const OptimizerConfig cfg = holevo_flags.resolved();
      json digest;
      const QuantumChannel ch = resolve_channel(channel_spec, digest);
      report.inputs["channel"] = digest;
      report.config = config_json(cfg);
      const CapacityReport r = holevo_minimax(ch, cfg);
      report.results = capacity_json(r);
      err << "holevo: " << format_real(real_json(r.value))
          << " bits, certificate gap "
          << format_real(real_json(r.certificate_gap.value_or(0.0)))
          << (r.converged ? ", converged" : ", not converged") << '\n';
    } else if (superactivation->parsed()) {
      report.command = "superactivation";
      const OptimizerConfig cfg = pair_flags.resolved();
      json da;
      json db;
      const QuantumChannel a = resolve_channel(channel_a, da);
      const QuantumChannel b = resolve_channel(channel_b, db);
      report.inputs["channel_a"] = da;
      report.inputs["channel_b"] = db;
      report.config = config_json(cfg);
      report.config["gap_tol"] = analysis.gap_tol;
      report.config["zero_cap_tol"] = analysis.zero_cap_tol;
      report.config["product_tol"] = analysis.product_tol;
      const FactorizationReport r = analyze_pair(a, b, cfg, analysis);
      report.results = factorization_json(r);
      err << "superactivation: " << verdict_name(r.verdict) << ", gap "
          << format_real(real_json(r.additivity_gap)) << " bits (singles "
          << format_real(real_json(r.value_a)) << ", "
          << format_real(real_json(r.value_b)) << "; joint "
          << format_real(real_json(r.joint_value)) << ")\n";
    } else if (verify->parsed()) {
      report.command = "verify";
      report.config = {{"suite", suite}, {"trials", trials}, {"seed", verify_seed}};
      const std::vector<IdentityCheck> checks =
          suite == "factorization" ? factorization_suite(trials, verify_seed)
                                   : identity_suite(trials, verify_seed);
      bool pass = true;
      for (const IdentityCheck& c : checks) {
        pass = pass && c.pass;
        err << (c.pass ? "pass " : "FAIL ") << c.name << ": max deviation "
            << format_real(real_json(c.max_deviation)) << " (tol " << c.tolerance
            << ", " << c.trials << " trials)\n";
      }
      report.results = {{"suite", suite},
                        {"checks", identity_checks_json(checks)},
                        {"pass", pass}};
      emit(report, start, out);
      return pass ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::kDimTooLarge ||
        e.code() == ErrorCode::kDimensionOverflow) {
      return kExitResourceCap;
    }
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  emit(report, start, out);
  return kExitOk;
}

}  // namespace qcap::cli
