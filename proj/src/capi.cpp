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

#include "ququart/ququart.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <numbers>
#include <optional>
#include <string>

#include "ququart/config.hpp"
#include "ququart/errors.hpp"
#include "ququart/experiments.hpp"
#include "ququart/gates.hpp"
#include "ququart/runner.hpp"

struct qq_state {
  ququart::QuditState state;
};

struct qq_run {
  ququart::RunOutput output;
};

struct qq_transpiled {
  ququart::TranspileOutput output;
};

namespace {

thread_local std::string last_error;

template <typename F>
qq_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return QQ_OK;
  } catch (const ququart::ParseError& e) {
    last_error = e.what();
    return QQ_ERR_PARSE;
  } catch (const ququart::ArgumentError& e) {
    last_error = e.what();
    return QQ_ERR_ARGUMENT;
  } catch (const ququart::DimensionError& e) {
    last_error = e.what();
    return QQ_ERR_DIMENSION;
  } catch (const ququart::ValidationError& e) {
    last_error = e.what();
    return QQ_ERR_VALIDATION;
  } catch (const ququart::NumericalError& e) {
    last_error = e.what();
    return QQ_ERR_NUMERICAL;
  } catch (const ququart::VerificationError& e) {
    last_error = e.what();
    return QQ_ERR_VERIFICATION;
  } catch (const ququart::IoError& e) {
    last_error = e.what();
    return QQ_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QQ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QQ_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QQ_ERR_INTERNAL;
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw ququart::ArgumentError(msg);
}

void apply(ququart::ExperimentConfig& config, const qq_run_options* o) {
  if (!o) return;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  if (o->has_seed) seed = o->seed;
  if (o->has_shots) {
    if (o->shots < 0) throw ququart::ValidationError("field 'shots': must be >= 0");
    shots = o->shots;
  }
  ququart::apply_overrides(config, seed, shots);
}

qq_status finish_run(ququart::ExperimentConfig config, const qq_run_options* options, qq_run** out) {
  return guarded([&] {
    apply(config, options);
    auto run = std::make_unique<qq_run>(qq_run{ququart::run_experiment(config)});
    if (options && options->out_dir) ququart::write_outputs(run->output, options->out_dir);
    *out = run.release();
  });
}

}  // namespace

extern "C" {

const char* qq_version(void) { return QUQUART_VERSION; }

const char* qq_last_error(void) { return last_error.c_str(); }

const char* qq_status_name(qq_status status) {
  switch (status) {
    case QQ_OK: return "ok";
    case QQ_ERR_ARGUMENT: return "argument error";
    case QQ_ERR_DIMENSION: return "dimension error";
    case QQ_ERR_VALIDATION: return "validation error";
    case QQ_ERR_NUMERICAL: return "numerical error";
    case QQ_ERR_VERIFICATION: return "verification error";
    case QQ_ERR_IO: return "i/o error";
    case QQ_ERR_PARSE: return "parse error";
    case QQ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qq_status qq_state_basis(int num_qudits, const int* dims, const int* levels, qq_state** out) {
  return guarded([&] {
    require(out && dims && levels && num_qudits > 0, "qq_state_basis: null or empty arguments");
    const ququart::Dims d(dims, dims + num_qudits);
    const std::vector<int> l(levels, levels + num_qudits);
    *out = new qq_state{ququart::basis_state(d, l)};
  });
}

qq_status qq_state_apply_rotation(qq_state* s, int ion, int level, double phi, double theta) {
  return guarded([&] {
    require(s != nullptr, "null state");
    require(ion >= 0 && ion < s->state.num_qudits(), "ion out of range");
    const int d = s->state.dims()[static_cast<std::size_t>(ion)];
    s->state = ququart::apply_unitary(s->state, ququart::rotation_matrix(level, phi, theta, d), {ion});
  });
}

qq_status qq_state_apply_ms(qq_state* s, int ion_a, int ion_b, double chi) {
  return guarded([&] {
    require(s != nullptr, "null state");
    const int n = s->state.num_qudits();
    require(ion_a >= 0 && ion_a < n && ion_b >= 0 && ion_b < n && ion_a != ion_b, "MS ions invalid");
    const auto& dims = s->state.dims();
    const auto u = ququart::ms_matrix(chi, dims[static_cast<std::size_t>(ion_a)], dims[static_cast<std::size_t>(ion_b)]);
    s->state = ququart::apply_unitary(s->state, u, {ion_a, ion_b});
  });
}

size_t qq_state_size(const qq_state* s) { return s ? s->state.size() : 0; }

qq_status qq_state_populations(const qq_state* s, double* out, size_t capacity) {
  return guarded([&] {
    require(s && out, "null argument");
    const auto p = ququart::populations(s->state);
    for (size_t i = 0; i < p.size() && i < capacity; ++i) out[i] = p[i];
  });
}

void qq_state_free(qq_state* s) { delete s; }

qq_status qq_bell_fidelity(double p00, double p11, double amplitude, double* value, int* physical) {
  return guarded([&] {
    require(value != nullptr, "null output");
    const auto f = ququart::bell_fidelity(p00, p11, amplitude);
    *value = f.value;
    if (physical) *physical = f.physical ? 1 : 0;
  });
}

qq_status qq_validate_config(const char* path) {
  return guarded([&] {
    require(path != nullptr, "null path");
    (void)ququart::load_config(path);
  });
}

qq_status qq_run_experiment(const char* path, const qq_run_options* options, qq_run** out) {
  ququart::ExperimentConfig config;
  const qq_status st = guarded([&] {
    require(path && out, "null argument");
    config = ququart::load_config(path);
  });
  if (st != QQ_OK) return st;
  return finish_run(std::move(config), options, out);
}

qq_status qq_run_experiment_json(const char* json, const char* base_dir, const qq_run_options* options,
                                 qq_run** out) {
  ququart::ExperimentConfig config;
  const qq_status st = guarded([&] {
    require(json && out, "null argument");
    config = ququart::parse_config(json, base_dir ? base_dir : "");
  });
  if (st != QQ_OK) return st;
  return finish_run(std::move(config), options, out);
}

int qq_run_converged(const qq_run* r) { return r && r->output.converged ? 1 : 0; }

size_t qq_run_file_count(const qq_run* r) { return r ? r->output.files.size() : 0; }

const char* qq_run_file_name(const qq_run* r, size_t i) {
  return r && i < r->output.files.size() ? r->output.files[i].name.c_str() : nullptr;
}

const char* qq_run_file_contents(const qq_run* r, size_t i) {
  return r && i < r->output.files.size() ? r->output.files[i].contents.c_str() : nullptr;
}

size_t qq_run_warning_count(const qq_run* r) { return r ? r->output.warnings.size() : 0; }

const char* qq_run_warning(const qq_run* r, size_t i) {
  return r && i < r->output.warnings.size() ? r->output.warnings[i].c_str() : nullptr;
}

void qq_run_free(qq_run* r) { delete r; }

qq_status qq_transpile(const char* text, double rabi_frequency_hz, double ms_duration_s, double tolerance,
                       qq_transpiled** out) {
  return guarded([&] {
    require(text && out, "null argument");
    ququart::TranspileOptions opts;
    if (rabi_frequency_hz > 0.0) opts.rabi_frequency = 2.0 * std::numbers::pi * rabi_frequency_hz;
    if (ms_duration_s > 0.0) opts.ms_duration = ms_duration_s;
    if (tolerance > 0.0) opts.tolerance = tolerance;
    *out = new qq_transpiled{ququart::transpile_text(text, opts)};
  });
}

const char* qq_transpiled_native(const qq_transpiled* t) { return t ? t->output.native_text.c_str() : nullptr; }

const char* qq_transpiled_report(const qq_transpiled* t) { return t ? t->output.report_json.c_str() : nullptr; }

double qq_transpiled_residual(const qq_transpiled* t) { return t ? t->output.result.residual : NAN; }

size_t qq_transpiled_op_count(const qq_transpiled* t) { return t ? t->output.result.circuit.ops.size() : 0; }

void qq_transpiled_free(qq_transpiled* t) { delete t; }

}  // extern "C"
