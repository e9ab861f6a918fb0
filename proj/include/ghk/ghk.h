/*
 * Copyright 2026 The ghk-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef GHK_GHK_H_
#define GHK_GHK_H_

/* C interface to libghk.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns a ghk_status; on failure ghk_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** out-parameters are owned by the caller
 * and released with ghk_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GHK_API __declspec(dllexport)
#else
#define GHK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ghk_status {
  GHK_OK = 0,
  GHK_VERDICT_FAILED = 1, /* a run completed but some check failed */
  GHK_ERR_CONFIG = 2,
  GHK_ERR_RESOURCE = 3,
  GHK_ERR_INVALID_ARGUMENT = 4,
  GHK_ERR_PRECONDITION = 5,
  GHK_ERR_UNSUPPORTED = 6,
  GHK_ERR_INCONSISTENCY = 7,
  GHK_ERR_IO = 8,
  GHK_ERR_INTERNAL = 9
} ghk_status;

typedef struct ghk_run ghk_run;
typedef struct ghk_cyclic ghk_cyclic;

GHK_API const char* ghk_version(void);
GHK_API const char* ghk_last_error(void);
GHK_API const char* ghk_status_name(ghk_status status);
/* Process exit code for a status: 0 pass, 1 failed verdict or internal
 * inconsistency, 2 configuration error, 3 resource cap. */
GHK_API int ghk_status_exit_code(ghk_status status);
GHK_API void ghk_string_free(char* s);

/* Worker cap for parallel loops; 0 restores GHK_THREADS / hardware default. */
GHK_API void ghk_set_threads(unsigned n);

/* --- config runs ------------------------------------------------------ */

/* Runs a JSON config after applying `n_sets` "a.b=value" overrides. When
 * `seed` is non-null it replaces the config's "seed". On GHK_OK or
 * GHK_VERDICT_FAILED *out holds the run; otherwise *out is null. */
GHK_API ghk_status ghk_run_config(const char* config_json, const char* const* sets, size_t n_sets,
                                  const uint64_t* seed, ghk_run** out);
GHK_API ghk_status ghk_run_config_file(const char* path, const char* const* sets, size_t n_sets,
                                       const uint64_t* seed, ghk_run** out);
GHK_API void ghk_run_free(ghk_run* run);
GHK_API int ghk_run_passed(const ghk_run* run);
GHK_API size_t ghk_run_row_count(const ghk_run* run);

/* Output path and format after combining the config's "output" block with
 * caller overrides (either may be null). An empty path means stdout. */
GHK_API ghk_status ghk_run_output_target(const ghk_run* run, const char* out_path, const char* format,
                                         char** path, char** resolved_format);
/* Renders as "csv" or "json". */
GHK_API ghk_status ghk_run_render(const ghk_run* run, const char* format, char** text);
/* Renders and writes atomically (temporary file plus rename). */
GHK_API ghk_status ghk_run_write(const ghk_run* run, const char* path, const char* format);

/* Scenario ids as a JSON array. */
GHK_API ghk_status ghk_scenario_names(char** json);

/* --- cyclic systems ----------------------------------------------------- */

/* Z_modulus with the shift x -> x + step. */
GHK_API ghk_status ghk_cyclic_new(int64_t modulus, int64_t step, ghk_cyclic** out);
GHK_API void ghk_cyclic_free(ghk_cyclic* sys);
/* Functions are `modulus` complex values, interleaved (re, im). */
GHK_API ghk_status ghk_cyclic_seminorm(const ghk_cyclic* sys, const double* values, size_t count, unsigned s,
                                       double* out);
GHK_API ghk_status ghk_cyclic_u2_fft(const ghk_cyclic* sys, const double* values, size_t count, double* out);
/* Writes D_s f into `dual` (same layout as `values`). */
GHK_API ghk_status ghk_cyclic_dual(const ghk_cyclic* sys, const double* values, size_t count, unsigned s,
                                   double* dual);

#ifdef __cplusplus
}
#endif

#endif /* GHK_GHK_H_ */
