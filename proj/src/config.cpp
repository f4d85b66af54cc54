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

#include "ququart/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ququart/circuit_io.hpp"
#include "ququart/errors.hpp"
#include "ququart/ms_dynamics.hpp"

namespace ququart {
namespace {

using nlohmann::json;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError("field '" + path + "': " + msg);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(join(path, key), "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const std::string& path, const char* key, double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(join(path, key), "must be a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) fail(join(path, key), "must be finite");
  return x;
}

std::optional<double> optional_number(const json& obj, const std::string& path, const char* key) {
  if (!find(obj, key)) return std::nullopt;
  return number(obj, path, key, 0.0);
}

std::int64_t integer(const json& obj, const std::string& path, const char* key, std::int64_t fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(join(path, key), "must be an integer");
  return v->get<std::int64_t>();
}

bool boolean(const json& obj, const std::string& path, const char* key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(join(path, key), "must be true or false");
  return v->get<bool>();
}

std::string string(const json& obj, const std::string& path, const char* key, const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(join(path, key), "must be a string");
  return v->get<std::string>();
}

std::vector<double> number_list(const json& obj, const std::string& path, const char* key) {
  const json* v = find(obj, key);
  if (!v) return {};
  if (!v->is_array()) fail(join(path, key), "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const auto& e = (*v)[i];
    if (!e.is_number() || !std::isfinite(e.get<double>())) {
      fail(join(path, key) + "[" + std::to_string(i) + "]", "must be a finite number");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

const json& object_or_empty(const json& obj, const char* key) {
  static const json empty = json::object();
  const json* v = find(obj, key);
  return v ? *v : empty;
}

void require_positive(double x, const std::string& path) {
  if (!(x > 0.0)) fail(path, "must be positive");
}

void require_probability(double x, const std::string& path) {
  if (!(x >= 0.0 && x <= 1.0)) fail(path, "must lie in [0, 1]");
}

ExperimentKind parse_kind(const std::string& s) {
  if (s == "rabi") return ExperimentKind::Rabi;
  if (s == "ms-scan") return ExperimentKind::MsScan;
  if (s == "parity") return ExperimentKind::Parity;
  if (s == "bell") return ExperimentKind::Bell;
  if (s == "transpile") return ExperimentKind::Transpile;
  fail("experiment", "must be one of rabi, ms-scan, parity, bell, transpile (got '" + s + "')");
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Normalised form of the typed configuration, in file units.
json canonical_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = std::string(experiment_name(c.kind));
  j["seed"] = c.seed;
  j["shots"] = c.shots;
  j["qudit_dim"] = c.qudit_dim;
  if (c.grid) j["grid"] = {{"start", c.grid->start}, {"stop", c.grid->stop}, {"points", c.grid->points}};
  j["ms"] = {{"eta", c.ms.eta},
             {"detuning_hz", c.ms.detuning ? json(*c.ms.detuning / kTwoPi) : json(nullptr)},
             {"gate_duration_s", optional_json(c.ms.gate_duration)},
             {"mode_frequency_hz", c.ms.mode_frequency / kTwoPi},
             {"nbar", c.ms.nbar},
             {"fock_cutoff", c.ms.fock_cutoff ? json(*c.ms.fock_cutoff) : json(nullptr)},
             {"debye_waller", c.ms.debye_waller},
             {"rabi_frequency_hz", c.ms.rabi_frequency ? json(*c.ms.rabi_frequency / kTwoPi) : json(nullptr)}};
  j["rabi"] = {{"ion", c.rabi.ion},
               {"level", c.rabi.level},
               {"rabi_frequency_hz", c.rabi.rabi_frequency / kTwoPi},
               {"num_ions", c.rabi.num_ions},
               {"apply_spam", c.rabi.apply_spam}};
  j["parity"] = {{"source", c.parity.synthetic ? "synthetic" : "ms"},
                 {"p00", c.parity.p00},
                 {"p11", c.parity.p11},
                 {"amplitude", c.parity.amplitude},
                 {"phase", c.parity.phase}};
  j["transpile"] = {{"input", c.transpile.input},
                    {"output", c.transpile.output},
                    {"rabi_frequency_hz", c.transpile.rabi_frequency / kTwoPi},
                    {"ms_duration_s", c.transpile.ms_duration},
                    {"tolerance", c.transpile.tolerance}};
  j["noise"] = {{"level_dephasing", c.noise.level_dephasing},
                {"laser_dephasing", c.noise.laser_dephasing},
                {"crosstalk", c.noise.crosstalk},
                {"field_sensitivity_hz_per_ut", c.noise.field_sensitivity},
                {"spam",
                 {{"bright_as_dark", c.noise.spam.bright_as_dark},
                  {"dark_as_bright", c.noise.spam.dark_as_bright},
                  {"transfer_error", c.noise.spam.transfer_error}}}};
  j["fit"] = {{"max_iterations", c.fit.max_iterations}, {"bootstrap_resamples", c.fit.bootstrap_resamples}};
  return j;
}

void validate_typed(const ExperimentConfig& c) {
  if (c.shots < 0) fail("shots", "must be >= 0 (0 selects exact expectation values)");
  if (c.qudit_dim < kMinQuditDim || c.qudit_dim > kMaxQuditDim) fail("qudit_dim", "must lie in [2, 6]");
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Rabi: return "rabi";
    case ExperimentKind::MsScan: return "ms-scan";
    case ExperimentKind::Parity: return "parity";
    case ExperimentKind::Bell: return "bell";
    case ExperimentKind::Transpile: return "transpile";
  }
  return "?";
}

ExperimentConfig parse_config(std::string_view text, std::string base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(), 0);
  }
  check_keys(root, "", {"experiment", "seed", "shots", "qudit_dim", "grid", "ms", "rabi", "parity", "transpile",
                        "noise", "fit", "description"});
  ExperimentConfig c;
  c.base_dir = std::move(base_dir);
  if (!find(root, "experiment")) fail("experiment", "is required");
  c.kind = parse_kind(string(root, "", "experiment", ""));
  const auto seed = integer(root, "", "seed", 0);
  if (seed < 0) fail("seed", "must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  const auto shots = integer(root, "", "shots", 300);
  if (shots < 0 || shots > 100000000) fail("shots", "must lie in [0, 1e8]");
  c.shots = static_cast<int>(shots);
  const auto dim = integer(root, "", "qudit_dim", kDefaultQuditDim);
  if (dim < kMinQuditDim || dim > kMaxQuditDim) fail("qudit_dim", "must lie in [2, 6]");
  c.qudit_dim = static_cast<int>(dim);

  if (const json* g = find(root, "grid")) {
    check_keys(*g, "grid", {"start", "stop", "points"});
    GridSpec spec;
    spec.start = number(*g, "grid", "start", 0.0);
    if (!find(*g, "stop")) fail("grid.stop", "is required");
    spec.stop = number(*g, "grid", "stop", 0.0);
    const auto pts = integer(*g, "grid", "points", 51);
    if (pts < 2 || pts > 100000) fail("grid.points", "must lie in [2, 100000]");
    spec.points = static_cast<int>(pts);
    if (!(spec.stop > spec.start)) fail("grid.stop", "must exceed grid.start");
    c.grid = spec;
  }

  {
    const json& m = object_or_empty(root, "ms");
    check_keys(m, "ms", {"eta", "detuning_hz", "gate_duration_s", "mode_frequency_hz", "nbar", "fock_cutoff",
                         "debye_waller", "rabi_frequency_hz"});
    c.ms.eta = number(m, "ms", "eta", 0.0);
    c.ms.mode_frequency = kTwoPi * number(m, "ms", "mode_frequency_hz", kStretchModeFrequency / kTwoPi);
    require_positive(c.ms.mode_frequency, "ms.mode_frequency_hz");
    if (c.ms.eta == 0.0) {
      c.ms.eta = lamb_dicke_parameter(435.5e-9, 171.0, c.ms.mode_frequency, 1.0 / std::sqrt(2.0));
    }
    if (!(c.ms.eta > 0.0 && c.ms.eta <= kMaxLambDicke)) fail("ms.eta", "must lie in (0, 0.3]");
    if (auto d = optional_number(m, "ms", "detuning_hz")) {
      require_positive(*d, "ms.detuning_hz");
      c.ms.detuning = kTwoPi * *d;
    }
    if (auto t = optional_number(m, "ms", "gate_duration_s")) {
      require_positive(*t, "ms.gate_duration_s");
      if (c.ms.detuning) fail("ms.gate_duration_s", "give either detuning_hz or gate_duration_s, not both");
      c.ms.gate_duration = *t;
    }
    if (!c.ms.detuning && !c.ms.gate_duration) c.ms.gate_duration = kReferenceGateDuration;
    c.ms.nbar = number(m, "ms", "nbar", kStretchModeNbar);
    if (!(c.ms.nbar >= 0.0)) fail("ms.nbar", "must be >= 0");
    if (find(m, "fock_cutoff")) {
      const auto fc = integer(m, "ms", "fock_cutoff", kDefaultFockCutoff);
      if (fc < 1 || fc > 400) fail("ms.fock_cutoff", "must lie in [1, 400]");
      c.ms.fock_cutoff = static_cast<int>(fc);
    }
    c.ms.debye_waller = boolean(m, "ms", "debye_waller", true);
    if (auto r = optional_number(m, "ms", "rabi_frequency_hz")) {
      require_positive(*r, "ms.rabi_frequency_hz");
      c.ms.rabi_frequency = kTwoPi * *r;
    }
  }

  {
    const json& r = object_or_empty(root, "rabi");
    check_keys(r, "rabi", {"ion", "level", "rabi_frequency_hz", "num_ions", "apply_spam"});
    c.rabi.num_ions = static_cast<int>(integer(r, "rabi", "num_ions", 2));
    if (c.rabi.num_ions < 1 || c.rabi.num_ions > 4) fail("rabi.num_ions", "must lie in [1, 4]");
    c.rabi.ion = static_cast<int>(integer(r, "rabi", "ion", 0));
    if (c.rabi.ion < 0 || c.rabi.ion >= c.rabi.num_ions) fail("rabi.ion", "must lie in [0, num_ions)");
    c.rabi.level = static_cast<int>(integer(r, "rabi", "level", 1));
    if (c.rabi.level < 1 || c.rabi.level >= c.qudit_dim) fail("rabi.level", "must lie in [1, qudit_dim)");
    c.rabi.rabi_frequency = kTwoPi * number(r, "rabi", "rabi_frequency_hz", 0.0);
    if (c.kind == ExperimentKind::Rabi) {
      if (!find(r, "rabi_frequency_hz")) fail("rabi.rabi_frequency_hz", "is required for the rabi experiment");
      require_positive(c.rabi.rabi_frequency, "rabi.rabi_frequency_hz");
    }
    c.rabi.apply_spam = boolean(r, "rabi", "apply_spam", true);
  }

  {
    const json& p = object_or_empty(root, "parity");
    check_keys(p, "parity", {"source", "p00", "p11", "amplitude", "phase"});
    const std::string source = string(p, "parity", "source", "ms");
    if (source != "ms" && source != "synthetic") fail("parity.source", "must be 'ms' or 'synthetic'");
    c.parity.synthetic = source == "synthetic";
    c.parity.p00 = number(p, "parity", "p00", 0.5);
    c.parity.p11 = number(p, "parity", "p11", 0.5);
    c.parity.amplitude = number(p, "parity", "amplitude", 1.0);
    c.parity.phase = number(p, "parity", "phase", 0.0);
    require_probability(c.parity.p00, "parity.p00");
    require_probability(c.parity.p11, "parity.p11");
    if (c.parity.p00 + c.parity.p11 > 1.0 + 1e-12) fail("parity.p11", "p00 + p11 must not exceed 1");
    if (!(std::abs(c.parity.amplitude) <= 1.0)) fail("parity.amplitude", "must lie in [-1, 1]");
  }

  {
    const json& t = object_or_empty(root, "transpile");
    check_keys(t, "transpile", {"input", "output", "rabi_frequency_hz", "ms_duration_s", "tolerance"});
    c.transpile.input = string(t, "transpile", "input", "");
    c.transpile.output = string(t, "transpile", "output", "");
    if (c.kind == ExperimentKind::Transpile && c.transpile.input.empty()) {
      fail("transpile.input", "is required for the transpile experiment");
    }
    c.transpile.rabi_frequency = kTwoPi * number(t, "transpile", "rabi_frequency_hz", 0.0);
    if (c.transpile.rabi_frequency < 0.0) fail("transpile.rabi_frequency_hz", "must be >= 0");
    c.transpile.ms_duration = number(t, "transpile", "ms_duration_s", kReferenceGateDuration);
    require_positive(c.transpile.ms_duration, "transpile.ms_duration_s");
    c.transpile.tolerance = number(t, "transpile", "tolerance", 1e-7);
    require_positive(c.transpile.tolerance, "transpile.tolerance");
  }

  {
    const json& n = object_or_empty(root, "noise");
    check_keys(n, "noise", {"level_dephasing", "laser_dephasing", "crosstalk", "field_psd",
                            "field_sensitivity_hz_per_ut", "spam"});
    c.noise.field_sensitivity = number_list(n, "noise", "field_sensitivity_hz_per_ut");
    if (c.noise.field_sensitivity.empty()) c.noise.field_sensitivity = default_field_sensitivity(c.qudit_dim);
    if (c.noise.field_sensitivity.size() != static_cast<std::size_t>(c.qudit_dim)) {
      fail("noise.field_sensitivity_hz_per_ut", "needs one entry per qudit level");
    }
    c.noise.level_dephasing = number_list(n, "noise", "level_dephasing");
    if (c.noise.level_dephasing.size() > static_cast<std::size_t>(c.qudit_dim)) {
      fail("noise.level_dephasing", "has more entries than qudit levels");
    }
    for (std::size_t i = 0; i < c.noise.level_dephasing.size(); ++i) {
      if (c.noise.level_dephasing[i] < 0.0) fail("noise.level_dephasing[" + std::to_string(i) + "]", "must be >= 0");
    }
    if (auto psd = optional_number(n, "noise", "field_psd")) {
      if (*psd < 0.0) fail("noise.field_psd", "must be >= 0");
      if (!c.noise.level_dephasing.empty()) fail("noise.field_psd", "give either field_psd or level_dephasing");
      c.noise.level_dephasing = magnetic_dephasing_rates(c.noise.field_sensitivity, *psd);
    }
    c.noise.laser_dephasing = number(n, "noise", "laser_dephasing", 0.0);
    if (c.noise.laser_dephasing < 0.0) fail("noise.laser_dephasing", "must be >= 0");
    c.noise.crosstalk = number(n, "noise", "crosstalk", kDefaultCrosstalk);
    if (!(c.noise.crosstalk >= 0.0 && c.noise.crosstalk <= kMaxCrosstalk)) fail("noise.crosstalk", "must lie in [0, 0.2]");
    const json& s = object_or_empty(n, "spam");
    check_keys(s, "noise.spam", {"bright_as_dark", "dark_as_bright", "transfer_error"});
    c.noise.spam.bright_as_dark = number(s, "noise.spam", "bright_as_dark", 0.0);
    c.noise.spam.dark_as_bright = number(s, "noise.spam", "dark_as_bright", 0.0);
    c.noise.spam.transfer_error = number(s, "noise.spam", "transfer_error", 0.0);
    require_probability(c.noise.spam.bright_as_dark, "noise.spam.bright_as_dark");
    require_probability(c.noise.spam.dark_as_bright, "noise.spam.dark_as_bright");
    require_probability(c.noise.spam.transfer_error, "noise.spam.transfer_error");
  }

  {
    const json& f = object_or_empty(root, "fit");
    check_keys(f, "fit", {"max_iterations", "bootstrap_resamples"});
    const auto it = integer(f, "fit", "max_iterations", 200);
    if (it < 1 || it > 100000) fail("fit.max_iterations", "must lie in [1, 100000]");
    const auto bs = integer(f, "fit", "bootstrap_resamples", 200);
    if (bs < 0 || bs > 100000) fail("fit.bootstrap_resamples", "must lie in [0, 100000]");
    c.fit.max_iterations = static_cast<int>(it);
    c.fit.bootstrap_resamples = static_cast<int>(bs);
  }

  validate_typed(c);
  c.canonical = canonical_json(c).dump();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(buf.str(), dir);
}

void apply_overrides(ExperimentConfig& c, std::optional<std::uint64_t> seed, std::optional<int> shots) {
  if (seed) c.seed = *seed;
  if (shots) c.shots = *shots;
  validate_typed(c);
  c.canonical = canonical_json(c).dump();
}

std::string config_hash(const ExperimentConfig& c) { return content_hash(c.canonical); }

}  // namespace ququart
