// Copyright 2026 The ququart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ququart/config.hpp"
#include "ququart/scan.hpp"
#include "ququart/transpiler.hpp"

namespace ququart {

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string contents;
};

struct RunOutput {
  std::vector<OutputFile> files;  // summary.json is always present
  bool converged = true;
  std::vector<std::string> warnings;
};

/// Runs the configured experiment. Output bytes depend only on the config
/// (including seed and shots) and the tool version.
RunOutput run_experiment(const ExperimentConfig& config);

/// Writes every file under `dir`, creating it if needed. Throws IoError.
void write_outputs(const RunOutput& output, const std::string& dir);

/// CSV of a scan: a '#' metadata line, one header row, one row per grid
/// point (parameter, then value and error columns per series).
std::string scan_csv(const ScanResult& scan, std::string_view metadata);

struct TranspileOutput {
  TranspileResult result;
  std::string native_text;
  std::string report_json;
};

/// Parses a qubit circuit, transpiles and verifies it, and formats the
/// native circuit and its report.
TranspileOutput transpile_text(std::string_view circuit_text, const TranspileOptions& options = {});

}  // namespace ququart
