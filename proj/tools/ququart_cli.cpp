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

// Command-line front end. Links only the C interface.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ququart/ququart.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;
constexpr int kExitNonconverged = 5;
constexpr int kExitInternal = 1;

int exit_code(qq_status st) {
  switch (st) {
    case QQ_OK: return kExitOk;
    case QQ_ERR_ARGUMENT:
    case QQ_ERR_DIMENSION:
    case QQ_ERR_VALIDATION:
    case QQ_ERR_PARSE:
    case QQ_ERR_IO: return kExitInput;
    case QQ_ERR_NUMERICAL: return kExitNumerical;
    case QQ_ERR_VERIFICATION: return kExitVerification;
    case QQ_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

int report(qq_status st, const std::string& what) {
  std::cerr << "ququart: " << what << ": " << qq_status_name(st) << ": " << qq_last_error() << '\n';
  return exit_code(st);
}

std::string default_out_dir() {
  const char* env = std::getenv("QUQUART_OUT_DIR");
  return env && *env ? env : "ququart-out";
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-ququart trapped-ion processor simulator"};
  app.set_version_flag("--version", std::string("ququart ") + qq_version());
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  bool allow_nonconverged = false;
  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--shots", shots, "Override shots per point (0 = exact expectation values)");
  run->add_option("--out", out_dir, "Output directory (default $QUQUART_OUT_DIR or ./ququart-out)");
  run->add_flag("--allow-nonconverged", allow_nonconverged, "Exit 0 even if a fit did not converge");

  std::string circuit_path, native_path, report_path;
  double rabi_hz = 0.0, ms_duration = 0.0, tolerance = 0.0;
  auto* tr = app.add_subcommand("transpile", "Compile a 4-qubit circuit onto two ququarts");
  tr->add_option("input", circuit_path, "Qubit circuit file")->required();
  tr->add_option("output", native_path, "Native circuit file (default <out>/<input stem>.native)");
  tr->add_option("--report", report_path, "Verification report (default <output stem>.report.json)");
  tr->add_option("--out", out_dir, "Output directory when no output path is given");
  tr->add_option("--rabi-hz", rabi_hz, "Single-qudit Rabi frequency for the wall-time estimate, Hz");
  tr->add_option("--ms-duration", ms_duration, "MS gate duration, s");
  tr->add_option("--tolerance", tolerance, "Equivalence tolerance (default 1e-7)");

  std::string validate_path;
  auto* val = app.add_subcommand("validate", "Check a config file against the schema");
  val->add_option("config", validate_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (out_dir.empty()) out_dir = default_out_dir();

  if (*run) {
    qq_run_options opts{};
    opts.has_seed = seed.has_value();
    opts.seed = seed.value_or(0);
    opts.has_shots = shots.has_value();
    opts.shots = shots.value_or(0);
    opts.out_dir = out_dir.c_str();
    qq_run* result = nullptr;
    const qq_status st = qq_run_experiment(config_path.c_str(), &opts, &result);
    if (st != QQ_OK) return report(st, "run " + config_path);
    for (size_t i = 0; i < qq_run_file_count(result); ++i) {
      std::cout << (std::filesystem::path(out_dir) / qq_run_file_name(result, i)).string() << '\n';
    }
    for (size_t i = 0; i < qq_run_warning_count(result); ++i) {
      std::cerr << "ququart: warning: " << qq_run_warning(result, i) << '\n';
    }
    const bool converged = qq_run_converged(result) != 0;
    qq_run_free(result);
    if (!converged && !allow_nonconverged) {
      std::cerr << "ququart: a fit did not converge (use --allow-nonconverged to accept)\n";
      return kExitNonconverged;
    }
    return kExitOk;
  }

  if (*tr) {
    std::ifstream in(circuit_path, std::ios::binary);
    if (!in) {
      std::cerr << "ququart: cannot read '" << circuit_path << "'\n";
      return kExitInput;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    qq_transpiled* t = nullptr;
    const qq_status st = qq_transpile(buf.str().c_str(), rabi_hz, ms_duration, tolerance, &t);
    if (st != QQ_OK) return report(st, "transpile " + circuit_path);
    std::filesystem::path native = native_path.empty()
                                       ? std::filesystem::path(out_dir) /
                                             (std::filesystem::path(circuit_path).stem().string() + ".native")
                                       : std::filesystem::path(native_path);
    std::filesystem::path rep = report_path.empty()
                                    ? native.parent_path() / (native.stem().string() + ".report.json")
                                    : std::filesystem::path(report_path);
    const bool ok = write_file(native, qq_transpiled_native(t)) && write_file(rep, qq_transpiled_report(t));
    std::cout << native.string() << '\n' << rep.string() << '\n';
    std::cout << "residual " << qq_transpiled_residual(t) << ", native ops " << qq_transpiled_op_count(t) << '\n';
    qq_transpiled_free(t);
    if (!ok) {
      std::cerr << "ququart: cannot write transpiler output\n";
      return kExitInput;
    }
    return kExitOk;
  }

  const qq_status st = qq_validate_config(validate_path.c_str());
  if (st != QQ_OK) return report(st, "validate " + validate_path);
  std::cout << validate_path << ": ok\n";
  return kExitOk;
}
