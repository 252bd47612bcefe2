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

#ifndef QPURIFY_EXPERIMENTS_HPP
#define QPURIFY_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpurify/analysis.hpp"
#include "qpurify/kraus.hpp"

namespace qpurify {

const char* library_version();

/// Batch experiment description. Field names double as the JSON config
/// schema; command-line flags override file values upstream.
struct ExperimentConfig {
  enum class Command { reconstruct, montecarlo, entropy_sweep, kraus_audit };
  enum class Format { json, csv };

  Command command = Command::reconstruct;
  int k = 3;
  std::optional<std::vector<double>> probs;     // outcome probabilities, z/y/x order
  std::optional<std::array<double, 4>> psi;     // amplitudes as re0, im0, re1, im1
  std::optional<long> samples;                  // sweep size / grid resolution
  std::uint64_t seed = 0;
  std::optional<int> phase_grid;
  std::string output_path;
  Format format = Format::json;

  /// Parses the JSON schema; rejects unknown keys. Throws Error(config).
  static ExperimentConfig from_json_text(const std::string& text);
};

const char* command_name(ExperimentConfig::Command command);
ExperimentConfig::Command command_from_name(const std::string& name);

/// One experiment's machine-readable output: an ordered JSON document plus a
/// per-sample CSV view. `violations` counts failed internal consistency
/// checks (zero on a healthy run).
struct ResultRecord {
  nlohmann::ordered_json document;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  long long violations = 0;

  std::string render(ExperimentConfig::Format format) const;
};

/// Serializes a double with 17 significant digits, enough to reproduce the
/// exact binary value on parse.
std::string format_double(double v);

/// Deterministic JSON rendering: keys in insertion order, doubles via
/// format_double. Two runs with the same config produce identical bytes.
std::string render_json(const nlohmann::ordered_json& doc);

ResultRecord run_reconstruct(const ExperimentConfig& cfg);
ResultRecord run_montecarlo(const ExperimentConfig& cfg);
ResultRecord run_entropy_sweep(const ExperimentConfig& cfg);
ResultRecord run_kraus_audit(const ExperimentConfig& cfg);

/// Dispatch on cfg.command.
ResultRecord run(const ExperimentConfig& cfg);

}  // namespace qpurify

#endif
