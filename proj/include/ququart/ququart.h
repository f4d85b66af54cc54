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

/* C interface of the ququart library. Every fallible call returns a
 * qq_status; on failure qq_last_error() describes the problem (per thread).
 * Handles are opaque and owned by the caller until passed to their free
 * function. Strings returned by accessors live as long as their handle. */
#ifndef QUQUART_QUQUART_H_
#define QUQUART_QUQUART_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QQ_BUILDING_LIBRARY)
#define QQ_API __attribute__((visibility("default")))
#else
#define QQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qq_status {
  QQ_OK = 0,
  QQ_ERR_ARGUMENT = 1,
  QQ_ERR_DIMENSION = 2,
  QQ_ERR_VALIDATION = 3,
  QQ_ERR_NUMERICAL = 4,
  QQ_ERR_VERIFICATION = 5,
  QQ_ERR_IO = 6,
  QQ_ERR_PARSE = 7,
  QQ_ERR_INTERNAL = 8
} qq_status;

QQ_API const char* qq_version(void);
QQ_API const char* qq_last_error(void);
QQ_API const char* qq_status_name(qq_status status);

/* Pure register state. */
typedef struct qq_state qq_state;

QQ_API qq_status qq_state_basis(int num_qudits, const int* dims, const int* levels, qq_state** out);
QQ_API qq_status qq_state_apply_rotation(qq_state* state, int ion, int level, double phi, double theta);
QQ_API qq_status qq_state_apply_ms(qq_state* state, int ion_a, int ion_b, double chi);
QQ_API size_t qq_state_size(const qq_state* state);
/* Writes min(capacity, size) populations. */
QQ_API qq_status qq_state_populations(const qq_state* state, double* out, size_t capacity);
QQ_API void qq_state_free(qq_state* state);

/* (p00 + p11)/2 + |A|/2, clamped to 1; *physical is 0 when clamping was needed. */
QQ_API qq_status qq_bell_fidelity(double p00, double p11, double amplitude, double* value, int* physical);

/* Experiment runs from JSON configuration. */
typedef struct qq_run_options {
  int has_seed;
  uint64_t seed;
  int has_shots;
  int shots;
  const char* out_dir; /* NULL: keep outputs in memory only */
} qq_run_options;

typedef struct qq_run qq_run;

QQ_API qq_status qq_validate_config(const char* config_path);
QQ_API qq_status qq_run_experiment(const char* config_path, const qq_run_options* options, qq_run** out);
/* Same with the configuration text in memory; relative paths resolve against base_dir. */
QQ_API qq_status qq_run_experiment_json(const char* config_json, const char* base_dir, const qq_run_options* options,
                                        qq_run** out);
QQ_API int qq_run_converged(const qq_run* run);
QQ_API size_t qq_run_file_count(const qq_run* run);
QQ_API const char* qq_run_file_name(const qq_run* run, size_t index);
QQ_API const char* qq_run_file_contents(const qq_run* run, size_t index);
QQ_API size_t qq_run_warning_count(const qq_run* run);
QQ_API const char* qq_run_warning(const qq_run* run, size_t index);
QQ_API void qq_run_free(qq_run* run);

/* Qubit circuit text -> verified native circuit. rabi_frequency_hz may be 0
 * (unknown); ms_duration_s and tolerance <= 0 select the defaults. */
typedef struct qq_transpiled qq_transpiled;

QQ_API qq_status qq_transpile(const char* circuit_text, double rabi_frequency_hz, double ms_duration_s,
                              double tolerance, qq_transpiled** out);
QQ_API const char* qq_transpiled_native(const qq_transpiled* t);
QQ_API const char* qq_transpiled_report(const qq_transpiled* t);
QQ_API double qq_transpiled_residual(const qq_transpiled* t);
QQ_API size_t qq_transpiled_op_count(const qq_transpiled* t);
QQ_API void qq_transpiled_free(qq_transpiled* t);

#ifdef __cplusplus
}
#endif

#endif /* QUQUART_QUQUART_H_ */
