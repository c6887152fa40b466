// Copyright 2026 The catl-decomp Authors
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

// C interface to the catl planning library. All outputs are heap strings
// owned by the caller and released with catl_string_free. On failure a
// function returns a non-zero status and catl_last_error() describes it.

#ifndef CATL_CATL_H_
#define CATL_CATL_H_

#include <stdint.h>

#if defined(_WIN32)
#define CATL_API __declspec(dllexport)
#else
#define CATL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum catl_status {
  CATL_OK = 0,
  CATL_ERR_INVALID_ARGUMENT = 1,
  CATL_ERR_PARSE = 2,
  CATL_ERR_VALIDATION = 3,
  CATL_ERR_DOMAIN = 4,
  CATL_ERR_IO = 5,
  CATL_ERR_INTERNAL = 6
} catl_status;

typedef struct catl_scenario catl_scenario;
typedef struct catl_options catl_options;
typedef struct catl_bench_config catl_bench_config;

// Receives one CSV row per finished benchmark run.
typedef void (*catl_bench_progress)(const char* csv_row, void* user);

CATL_API const char* catl_version(void);
// Message for the last failure on the calling thread; "" when none.
CATL_API const char* catl_last_error(void);
CATL_API const char* catl_status_name(catl_status status);
CATL_API void catl_string_free(char* s);

CATL_API catl_status catl_scenario_load(const char* path, catl_scenario** out);
CATL_API catl_status catl_scenario_from_json(const char* json, catl_scenario** out);
CATL_API void catl_scenario_free(catl_scenario* scenario);
CATL_API catl_status catl_scenario_to_json(const catl_scenario* scenario, char** out);
// JSON array of validation warnings.
CATL_API catl_status catl_scenario_warnings(const catl_scenario* scenario, char** out);

CATL_API catl_status catl_options_new(catl_options** out);
CATL_API void catl_options_free(catl_options* options);
// "feasible" or "robust".
CATL_API catl_status catl_options_set_mode(catl_options* options, const char* mode);
CATL_API catl_status catl_options_set_timeout(catl_options* options, double seconds);
CATL_API catl_status catl_options_set_seed(catl_options* options, uint64_t seed);
// Flags: "decompose", "keep_disjunctions", "allow_overlap",
// "distribute_spares".
CATL_API catl_status catl_options_set_flag(catl_options* options, const char* name,
                                           int value);

// Robustness, satisfaction, per-subformula breakdown and movement-rule
// violations of a plan JSON against the scenario.
CATL_API catl_status catl_check(const catl_scenario* scenario, const char* plan_json,
                                char** out);
CATL_API catl_status catl_assign(const catl_scenario* scenario,
                                 const catl_options* options, char** out);
CATL_API catl_status catl_decompose(const catl_scenario* scenario,
                                    const catl_options* options, char** out);
// Merged plan only: status, robustness and trajectories.
CATL_API catl_status catl_synthesize(const catl_scenario* scenario,
                                     const catl_options* options, char** out);
// Full pipeline result with assignment, decomposition, subplans and timings.
CATL_API catl_status catl_plan(const catl_scenario* scenario,
                               const catl_options* options, char** out);

CATL_API catl_status catl_bench_config_new(catl_bench_config** out);
CATL_API void catl_bench_config_free(catl_bench_config* config);
// Keys: grid, edge_weight, complete_graph, agents (comma list), trials,
// timeout, seed, modes, methods, region_divisor, duration, until ("a,b"),
// release, literal_template, jobs.
CATL_API catl_status catl_bench_config_set(catl_bench_config* config, const char* key,
                                           const char* value);
CATL_API catl_status catl_generate(const catl_bench_config* config, int n_agents,
                                   int trial, char** out);
// Runs the sweep. plot_dir may be NULL; progress may be NULL.
CATL_API catl_status catl_bench_run(const catl_bench_config* config,
                                    const char* plot_dir,
                                    catl_bench_progress progress, void* user,
                                    char** out_csv, char** out_summary);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // CATL_CATL_H_
