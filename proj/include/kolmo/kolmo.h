// Copyright 2026 The kolmo Authors
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

/* C interface to the kolmo solver. All handles are opaque. Every function
 * returning kolmo_status sets a thread-local message readable through
 * kolmo_last_error() when it fails. Strings returned through char** are
 * owned by the caller and released with kolmo_string_free(). */

#ifndef KOLMO_KOLMO_H
#define KOLMO_KOLMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KOLMO_API __declspec(dllexport)
#else
#define KOLMO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kolmo_status {
  KOLMO_OK = 0,
  KOLMO_ERR_GENERIC = 1,
  KOLMO_ERR_VALIDATION = 2, /* bad config, data or arguments to a model routine */
  KOLMO_ERR_BLOWUP = 3,     /* run terminated by a blow-up signal */
  KOLMO_ERR_IO = 4,         /* file system or checksum failure */
  KOLMO_ERR_ARGUMENT = 5    /* null handle or pointer */
} kolmo_status;

typedef struct kolmo_config kolmo_config;
typedef struct kolmo_sim kolmo_sim;

KOLMO_API const char* kolmo_version(void);
/* Message of the last failed call on this thread, "" if none. */
KOLMO_API const char* kolmo_last_error(void);
KOLMO_API void kolmo_string_free(char* s);

/* Configuration. Relative initial.path entries resolve against the config
 * file's directory (from_file) or base_dir (from_text, may be NULL). */
KOLMO_API kolmo_status kolmo_config_from_file(const char* path, kolmo_config** out);
/* Loads a config file and applies "key=value" overrides before validation. */
KOLMO_API kolmo_status kolmo_config_load(const char* path, const char* const* overrides,
                                         size_t count, kolmo_config** out);
KOLMO_API kolmo_status kolmo_config_from_text(const char* json, const char* base_dir,
                                              kolmo_config** out);
/* Overrides one key ("nu", "initial.omega0", ...). The value is parsed as
 * JSON, falling back to a plain string. The config is left unchanged if the
 * result does not validate. */
KOLMO_API kolmo_status kolmo_config_set(kolmo_config* cfg, const char* key, const char* value);
KOLMO_API kolmo_status kolmo_config_validate(const kolmo_config* cfg);
/* Fully resolved config as JSON. */
KOLMO_API kolmo_status kolmo_config_echo(const kolmo_config* cfg, char** json_out);
KOLMO_API void kolmo_config_free(kolmo_config* cfg);

/* Full run with outputs under the configured output_dir. Returns
 * KOLMO_ERR_BLOWUP when a blow-up signal stopped the run; the outputs and
 * the report are still produced. report_json may be NULL. */
KOLMO_API kolmo_status kolmo_run(const kolmo_config* cfg, char** report_json);
/* Twin run with omega perturbed by delta cos(x_1); writes stability.csv and
 * stability.json. */
KOLMO_API kolmo_status kolmo_stability(const kolmo_config* cfg, double delta, char** report_json);
/* Inequality harness. options_json may be NULL or an object with any of
 * d, n, s, band, decay, omega_o, threads. */
KOLMO_API kolmo_status kolmo_harness(const char* name, size_t trials, uint64_t seed,
                                     const char* options_json, char** result_json);
/* Named brute-force oracle; KOLMO_ERR_GENERIC if it ran but failed. */
KOLMO_API kolmo_status kolmo_oracle(const char* name, char** result_json);

/* Step-by-step simulation. */
KOLMO_API kolmo_status kolmo_sim_create(const kolmo_config* cfg, kolmo_sim** out);
/* Takes up to `steps` steps, stopping early at t_end. */
KOLMO_API kolmo_status kolmo_sim_step(kolmo_sim* sim, size_t steps);
KOLMO_API kolmo_status kolmo_sim_time(const kolmo_sim* sim, double* t);
KOLMO_API kolmo_status kolmo_sim_steps(const kolmo_sim* sim, size_t* steps);
KOLMO_API kolmo_status kolmo_sim_grid(const kolmo_sim* sim, int* d, int* n);
/* Copies "u0".."u2", "omega", "beta" or "k" into buf (n^d doubles). */
KOLMO_API kolmo_status kolmo_sim_copy_field(const kolmo_sim* sim, const char* name, double* buf,
                                            size_t len);
KOLMO_API kolmo_status kolmo_sim_clamp_total(const kolmo_sim* sim, double* total);
KOLMO_API kolmo_status kolmo_sim_write_snapshot(const kolmo_sim* sim, const char* dir,
                                                const char* stem);
KOLMO_API void kolmo_sim_free(kolmo_sim* sim);

#ifdef __cplusplus
}
#endif

#endif /* KOLMO_KOLMO_H */
