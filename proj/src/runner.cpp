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

#include "ququart/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ququart/circuit_io.hpp"
#include "ququart/errors.hpp"
#include "ququart/experiments.hpp"
#include "ququart/ms_dynamics.hpp"
#include "ququart/rng.hpp"

namespace ququart {
namespace {

using nlohmann::ordered_json;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kFitStream = 0x5f17;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> grid_or(const ExperimentConfig& c, double start, double stop, int points) {
  if (c.grid) return linspace(c.grid->start, c.grid->stop, c.grid->points);
  return linspace(start, stop, points);
}

ordered_json fit_json(const FitResult& fit) {
  ordered_json j;
  j["model"] = fit.model;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["residual_norm"] = fit.residual_norm;
  ordered_json params = ordered_json::object();
  for (const auto& p : fit.params) {
    params[p.name] = {{"value", std::isfinite(p.value) ? ordered_json(p.value) : ordered_json(nullptr)},
                      {"sigma", p.sigma},
                      {"sigma_bootstrap", p.sigma_bootstrap}};
  }
  j["parameters"] = params;
  return j;
}

MotionState motion_of(const MsConfig& m) {
  return m.fock_cutoff ? MotionState::thermal(m.nbar, *m.fock_cutoff) : MotionState::thermal(m.nbar);
}

PulseParams pulse_of(const MsConfig& m) {
  PulseParams p = m.detuning ? solve_gate_params(m.eta, *m.detuning, m.mode_frequency, m.debye_waller)
                             : gate_params_for_duration(m.eta, *m.gate_duration, m.mode_frequency, m.debye_waller);
  if (m.rabi_frequency) p.omega_rabi = *m.rabi_frequency;
  p.validate();
  return p;
}

ordered_json pulse_json(const PulseParams& p) {
  return {{"rabi_frequency_hz", p.omega_rabi / kTwoPi},
          {"detuning_hz", p.delta / kTwoPi},
          {"eta", p.eta},
          {"mode_frequency_hz", p.omega_m / kTwoPi},
          {"gate_duration_s", p.tau},
          {"debye_waller", p.debye_waller},
          {"gate_angle_ground", ms_gate_angle(p, p.tau, 0)}};
}

struct Context {
  const ExperimentConfig& config;
  std::string metadata;
  ordered_json results = ordered_json::object();
  RunOutput out;
};

void run_rabi(Context& ctx) {
  const auto& c = ctx.config;
  RabiSettings s;
  s.ion = c.rabi.ion;
  s.level = c.rabi.level;
  s.rabi_frequency = c.rabi.rabi_frequency;
  s.num_ions = c.rabi.num_ions;
  s.apply_spam = c.rabi.apply_spam;
  s.qudit_dim = c.qudit_dim;
  s.shots = c.shots;
  s.seed = c.seed;
  s.tau_grid = grid_or(c, 0.0, kMaxRabiDuration, 51);
  const ScanResult scan = rabi_scan(s, c.noise);
  ctx.out.files.push_back({"rabi.csv", scan_csv(scan, ctx.metadata)});

  FitOptions opts = c.fit;
  opts.seed = derive_seed(c.seed, kFitStream);
  const FitResult fit = fit_damped_sine(scan, "population", opts);
  ctx.results["fit"] = fit_json(fit);
  if (fit.converged) {
    const FidelityEstimate f = rabi_fidelity(fit);
    ctx.results["rabi_fidelity"] = {{"value", f.value},
                                    {"sigma", f.sigma},
                                    {"sigma_bootstrap", f.sigma_bootstrap},
                                    {"first_maximum_s", f.time}};
  } else {
    ctx.out.converged = false;
    ctx.out.warnings.push_back("damped-sine fit did not converge; parameters are unreliable");
    ctx.results["rabi_fidelity"] = nullptr;
  }
  ctx.results["pi_time_s"] = std::numbers::pi / s.rabi_frequency;
}

// First interior point lower than its predecessor and not above its
// successor.
std::optional<std::size_t> first_local_minimum(const std::vector<double>& v) {
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] < v[i - 1] && v[i] <= v[i + 1]) return i;
  }
  return std::nullopt;
}

void run_ms_scan(Context& ctx) {
  const auto& c = ctx.config;
  const PulseParams p = pulse_of(c.ms);
  const MotionState motion = motion_of(c.ms);
  const auto grid = grid_or(c, 0.0, 2.0 * p.tau, 101);
  const ScanResult scan = ms_duration_scan(p, motion, c.noise, grid, c.shots, c.seed, c.qudit_dim);
  ctx.out.files.push_back({"ms_scan.csv", scan_csv(scan, ctx.metadata)});
  ctx.results["pulse"] = pulse_json(p);
  ctx.results["nbar"] = motion.nbar();
  ctx.results["fock_cutoff"] = motion.fock_cutoff();
  // Located on the exact curve so shot noise cannot fake a minimum.
  const ScanResult exact = c.shots == 0 ? scan : ms_duration_scan(p, motion, c.noise, grid, 0, c.seed, c.qudit_dim);
  const auto idx = first_local_minimum(exact.column("p01_p10"));
  ctx.results["first_minimum_tau_s"] = idx ? ordered_json(grid[*idx]) : ordered_json(nullptr);
  ctx.results["loop_closure_tau_s"] = kTwoPi / p.delta;
  const DensityMatrix bell = prepare_ms_bell(p, motion, c.noise, c.qudit_dim);
  ctx.results["bell_fidelity_exact"] = std::clamp(fidelity(bell, bell_state(c.qudit_dim)), 0.0, 1.0);
}

void run_parity(Context& ctx, bool force_ms, const char* file) {
  const auto& c = ctx.config;
  DensityMatrix prepared = DensityMatrix::maximally_mixed({c.qudit_dim, c.qudit_dim});
  if (!force_ms && c.parity.synthetic) {
    prepared = synthetic_parity_state(c.parity.p00, c.parity.p11, c.parity.amplitude, c.parity.phase, c.qudit_dim);
    ctx.results["source"] = "synthetic";
    ctx.results["true_bell_fidelity"] = bell_fidelity(c.parity.p00, c.parity.p11, c.parity.amplitude).value;
  } else {
    const PulseParams p = pulse_of(c.ms);
    prepared = prepare_ms_bell(p, motion_of(c.ms), c.noise, c.qudit_dim);
    ctx.results["source"] = "ms";
    ctx.results["pulse"] = pulse_json(p);
    ctx.results["nbar"] = c.ms.nbar;
  }
  const auto grid = grid_or(c, 0.0, std::numbers::pi, 20);
  FitOptions opts = c.fit;
  opts.seed = derive_seed(c.seed, kFitStream);
  const BellExperiment e = bell_experiment(prepared, grid, c.shots, c.seed, c.noise.spam, opts);
  ctx.out.files.push_back({file, scan_csv(e.parity, ctx.metadata)});
  ctx.results["fit"] = fit_json(e.fit);
  ctx.results["amplitude"] = e.fit.value("amplitude");
  ctx.results["phase"] = e.fit.value("phase");
  ctx.results["coherence"] = e.fit.value("coherence");
  ctx.results["p00"] = {{"value", e.p00}, {"sigma", e.p00_sigma}};
  ctx.results["p11"] = {{"value", e.p11}, {"sigma", e.p11_sigma}};
  ctx.results["bell_fidelity"] = {{"value", e.fidelity.value},
                                  {"raw", e.fidelity.raw},
                                  {"sigma", e.fidelity_sigma},
                                  {"physical", e.fidelity.physical}};
  ctx.results["bell_fidelity_exact"] = e.exact_fidelity;
  if (!e.fidelity.physical) {
    ctx.out.warnings.push_back("Bell fidelity estimate exceeds 1 (raw " + g17(e.fidelity.raw) + "); clamped");
  }
  if (!e.fit.converged) {
    ctx.out.converged = false;
    ctx.out.warnings.push_back("parity fit is degenerate; amplitude and phase are unreliable");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string resolve(const std::string& base, const std::string& path) {
  if (path.empty() || std::filesystem::path(path).is_absolute() || base.empty()) return path;
  return (std::filesystem::path(base) / path).string();
}

void run_transpile(Context& ctx) {
  const auto& c = ctx.config;
  TranspileOptions opts;
  opts.rabi_frequency = c.transpile.rabi_frequency;
  opts.ms_duration = c.transpile.ms_duration;
  opts.tolerance = c.transpile.tolerance;
  const std::string text = read_file(resolve(c.base_dir, c.transpile.input));
  TranspileOutput t = transpile_text(text, opts);
  std::string name = c.transpile.output;
  if (name.empty()) name = std::filesystem::path(c.transpile.input).stem().string() + ".native";
  ctx.out.files.push_back({name, t.native_text});
  ctx.out.files.push_back({"transpile_report.json", t.report_json});
  ctx.results["native_file"] = name;
  ctx.results["residual"] = t.result.residual;
  ctx.results["native_ops"] = t.result.circuit.ops.size();
  ctx.results["rotations"] = t.result.circuit.rotation_count();
  ctx.results["ms_gates"] = t.result.circuit.ms_count();
  ctx.results["wall_time_s"] = t.result.wall_time;
}

}  // namespace

std::string scan_csv(const ScanResult& scan, std::string_view metadata) {
  scan.validate();
  std::ostringstream out;
  out << "# " << metadata << '\n';
  out << scan.parameter;
  for (const auto& s : scan.series) out << ',' << s << ',' << s << "_err";
  out << '\n';
  for (std::size_t i = 0; i < scan.grid.size(); ++i) {
    out << g17(scan.grid[i]);
    for (std::size_t s = 0; s < scan.series.size(); ++s) out << ',' << g17(scan.values[s][i]) << ',' << g17(scan.errors[s][i]);
    out << '\n';
  }
  return out.str();
}

TranspileOutput transpile_text(std::string_view text, const TranspileOptions& options) {
  const QubitCircuit circuit = parse_qubit_circuit(text);
  TranspileOutput out;
  out.result = transpile_circuit(circuit, options);
  const std::string hash = content_hash(text);
  out.native_text = format_native_circuit(out.result.circuit, hash);
  out.report_json = transpile_report(out.result, hash, options.tolerance);
  return out;
}

RunOutput run_experiment(const ExperimentConfig& config) {
  const std::string hash = config_hash(config);
  Context ctx{config, "tool=ququart version=" QUQUART_VERSION " config_hash=" + hash +
                          " experiment=" + std::string(experiment_name(config.kind)) +
                          " seed=" + std::to_string(config.seed) + " shots=" + std::to_string(config.shots),
              ordered_json::object(), {}};
  switch (config.kind) {
    case ExperimentKind::Rabi: run_rabi(ctx); break;
    case ExperimentKind::MsScan: run_ms_scan(ctx); break;
    case ExperimentKind::Parity: run_parity(ctx, false, "parity.csv"); break;
    case ExperimentKind::Bell: run_parity(ctx, true, "bell.csv"); break;
    case ExperimentKind::Transpile: run_transpile(ctx); break;
  }
  ordered_json summary;
  summary["tool"] = "ququart";
  summary["version"] = QUQUART_VERSION;
  summary["config_hash"] = hash;
  summary["experiment"] = std::string(experiment_name(config.kind));
  summary["seed"] = config.seed;
  summary["shots"] = config.shots;
  summary["converged"] = ctx.out.converged;
  summary["warnings"] = ctx.out.warnings;
  ordered_json files = ordered_json::array();
  for (const auto& f : ctx.out.files) files.push_back(f.name);
  summary["files"] = files;
  summary["results"] = ctx.results;
  ctx.out.files.push_back({"summary.json", summary.dump(2) + "\n"});
  return ctx.out;
}

void write_outputs(const RunOutput& output, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& f : output.files) {
    const auto path = std::filesystem::path(dir) / f.name;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << f.contents;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
  }
}

}  // namespace ququart
