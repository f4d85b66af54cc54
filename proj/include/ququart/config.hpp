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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ququart/fitting.hpp"
#include "ququart/noise.hpp"

namespace ququart {

// Experiment configuration (JSON). Frequencies in files are in Hz and are
// converted to angular units here; durations are in seconds, angles in
// radians, dephasing rates in rad^2/s. Unknown keys are rejected.

enum class ExperimentKind { Rabi, MsScan, Parity, Bell, Transpile };

std::string_view experiment_name(ExperimentKind kind);

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

struct MsConfig {
  double eta = 0.0;                   // 0 means: derived from the 171Yb+ 435.5 nm geometry
  std::optional<double> detuning;     // rad/s
  std::optional<double> gate_duration;  // s; used when no detuning is given
  double mode_frequency = 0.0;        // rad/s
  double nbar = 0.0;
  std::optional<int> fock_cutoff;
  bool debye_waller = true;
  std::optional<double> rabi_frequency;  // rad/s; overrides the solved value
};

struct RabiConfig {
  int ion = 0;
  int level = 1;
  double rabi_frequency = 0.0;  // rad/s, required for the rabi experiment
  int num_ions = 2;
  bool apply_spam = true;
};

struct ParityConfig {
  bool synthetic = false;  // source "synthetic" instead of "ms"
  double p00 = 0.5, p11 = 0.5, amplitude = 1.0, phase = 0.0;
};

struct TranspileConfig {
  std::string input;
  std::string output;
  double rabi_frequency = 0.0;  // rad/s, optional
  double ms_duration = 0.0;     // s
  double tolerance = 1e-7;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Rabi;
  std::uint64_t seed = 0;
  int shots = 300;
  int qudit_dim = kDefaultQuditDim;
  std::optional<GridSpec> grid;
  MsConfig ms;
  RabiConfig rabi;
  ParityConfig parity;
  TranspileConfig transpile;
  NoiseModel noise;
  FitOptions fit;
  std::string base_dir;   // relative paths resolve against this
  std::string canonical;  // normalised JSON, the input of the config hash
};

/// Parses and validates. Throws ValidationError ("field 'x.y': ...") on schema
/// violations and ParseError on malformed JSON.
ExperimentConfig parse_config(std::string_view json_text, std::string base_dir = {});
/// Reads the file; base_dir is the file's directory. IO failures throw Error.
ExperimentConfig load_config(const std::string& path);

/// Re-validates after overrides and refreshes `canonical`.
void apply_overrides(ExperimentConfig& config, std::optional<std::uint64_t> seed, std::optional<int> shots);

std::string config_hash(const ExperimentConfig& config);

}  // namespace ququart
