// Copyright 2026 The qpurify Authors
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

// Batch CLI over the qpurify C API. The CLI only assembles the experiment
// config and ships bytes to disk; every reported number comes out of the
// library.
//
// Exit codes: 0 clean run, 1 invariant violations in the results, 2 bad
// configuration or usage, 3 computation rejected the inputs, 4 I/O failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpurify.h"

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;
constexpr int kExitIo = 4;

struct SubcommandFlags {
  CLI::App* app = nullptr;
  int k = 3;
  std::vector<double> probs;
  std::vector<double> psi;
  long samples = 0;
  std::uint64_t seed = 0;
  int phase_grid = 0;
  std::string out_path;
  std::string format;
  std::string config_path;

  CLI::Option* k_opt = nullptr;
  CLI::Option* probs_opt = nullptr;
  CLI::Option* psi_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* grid_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* config_opt = nullptr;
};

SubcommandFlags make_subcommand(CLI::App& app, const std::string& name,
                                const std::string& description) {
  SubcommandFlags f;
  f.app = app.add_subcommand(name, description);
  f.k_opt = f.app->add_option("--k", f.k, "number of measured spin components (1, 2 or 3)");
  f.probs_opt = f.app->add_option("--probs", f.probs,
                                  "'+' outcome probabilities in z,y,x order (k values)");
  f.psi_opt = f.app->add_option("--psi", f.psi,
                                "initial state amplitudes re0 im0 re1 im1 (normalized by the library)")
                  ->expected(4);
  f.samples_opt = f.app->add_option("--samples", f.samples, "sweep size / grid resolution");
  f.seed_opt = f.app->add_option("--seed", f.seed, "random seed (default 0)");
  f.grid_opt = f.app->add_option("--phase-grid", f.phase_grid,
                                 "points in the free-phase average (>= 8)");
  f.out_opt = f.app->add_option("--out", f.out_path, "output file (stdout when omitted)");
  f.format_opt = f.app->add_option("--format", f.format, "output format")
                     ->check(CLI::IsMember({"json", "csv"}));
  f.config_opt = f.app->add_option("--config", f.config_path,
                                   "JSON config file; explicit flags override its values");
  return f;
}

int run_subcommand(const SubcommandFlags& f, const std::string& command) {
  nlohmann::json cfg = nlohmann::json::object();

  if (f.config_opt->count() > 0) {
    std::ifstream in(f.config_path);
    if (!in) {
      std::cerr << "qpurify: cannot read config file: " << f.config_path << "\n";
      return kExitIo;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      cfg = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "qpurify: config file is not valid JSON: " << e.what() << "\n";
      return kExitConfig;
    }
    if (!cfg.is_object()) {
      std::cerr << "qpurify: config file must hold a JSON object\n";
      return kExitConfig;
    }
    if (cfg.contains("command") && cfg["command"] != command) {
      std::cerr << "qpurify: config file names command '" << cfg["command"]
                << "' but the subcommand is '" << command << "'\n";
      return kExitConfig;
    }
  }

  cfg["command"] = command;
  if (f.k_opt->count() > 0) cfg["k"] = f.k;
  if (f.probs_opt->count() > 0) cfg["probs"] = f.probs;
  if (f.psi_opt->count() > 0) cfg["psi"] = f.psi;
  if (f.samples_opt->count() > 0) cfg["samples"] = f.samples;
  if (f.seed_opt->count() > 0) cfg["seed"] = f.seed;
  if (f.grid_opt->count() > 0) cfg["phase_grid"] = f.phase_grid;
  if (f.out_opt->count() > 0) cfg["output_path"] = f.out_path;
  if (f.format_opt->count() > 0) cfg["format"] = f.format;

  const std::string out_path = cfg.value("output_path", std::string());

  qp_result* result = nullptr;
  const qp_status status = qp_run_json(cfg.dump().c_str(), &result);
  if (status != QP_OK) {
    std::cerr << "qpurify: " << qp_status_name(status) << ": " << qp_last_error() << "\n";
    return status == QP_ERROR_CONFIG ? kExitConfig : kExitCompute;
  }

  const char* text = qp_result_render(result);
  const long long violations = qp_result_violations(result);

  int code = 0;
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
      std::cerr << "qpurify: cannot write " << out_path << "\n";
      qp_result_destroy(result);
      return kExitIo;
    }
    std::cout << command << ": violations=" << violations << " -> " << out_path << "\n";
  }
  if (violations > 0) {
    std::cerr << "qpurify: " << violations << " consistency check(s) failed\n";
    code = kExitViolations;
  }
  qp_result_destroy(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qubit purification, state reconstruction and entropy experiments"};
  app.set_version_flag("--version", std::string(qp_version()));
  app.require_subcommand(1);

  const SubcommandFlags reconstruct = make_subcommand(
      app, "reconstruct",
      "post-measurement states, both purifications and all fidelities for one input");
  const SubcommandFlags montecarlo = make_subcommand(
      app, "montecarlo", "fidelity formula and inequality sweep over Haar-random initial states");
  const SubcommandFlags entropy = make_subcommand(
      app, "entropy-sweep", "entropy and its determinant derivative on a grid, vs finite differences");
  const SubcommandFlags kraus = make_subcommand(
      app, "kraus-audit", "purifying channel, dilation and entropy bookkeeping checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (reconstruct.app->parsed()) return run_subcommand(reconstruct, "reconstruct");
  if (montecarlo.app->parsed()) return run_subcommand(montecarlo, "montecarlo");
  if (entropy.app->parsed()) return run_subcommand(entropy, "entropy-sweep");
  if (kraus.app->parsed()) return run_subcommand(kraus, "kraus-audit");
  return kExitConfig;
}
