/* Copyright 2026 The Shopfloor Authors
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

/* C interface to the shopfloor scheduling engine.
 *
 * Conventions:
 *   - Every fallible call returns sf_status. On failure the message is
 *     available from sf_last_error() on the calling thread until the next
 *     call into the library.
 *   - Handles are opaque and released with their *_free function.
 *   - char** outputs receive heap strings owned by the caller; release them
 *     with sf_string_free. Output pointers are untouched on failure.
 *   - JSON strings use 1-based steps and 0-based job and machine ids.
 */

#ifndef SHOPFLOOR_SHOPFLOOR_H_
#define SHOPFLOOR_SHOPFLOOR_H_

#include <stdint.h>

#if defined(SHOPFLOOR_BUILDING_LIBRARY)
#define SF_API __attribute__((visibility("default")))
#else
#define SF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sf_instance sf_instance;
typedef struct sf_schedule sf_schedule;

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_PARSE = 2,
  SF_ERR_IO = 3,
  SF_ERR_INVARIANT = 4,
  SF_ERR_NOT_FOUND = 5,
  SF_ERR_INTERNAL = 6
} sf_status;

typedef struct sf_repair_config {
  int64_t t_wip;
  int swap_budget;      /* < 0 selects one evaluation per job */
  int resume_remaining; /* nonzero resumes interrupted work */
} sf_repair_config;

SF_API const char* sf_version(void);
SF_API const char* sf_status_name(sf_status status);
SF_API const char* sf_last_error(void);
SF_API void sf_string_free(char* s);
/* Directory with bundled instances and bounds chosen at build time. */
SF_API const char* sf_default_data_dir(void);

/* Instances. ref is "demo:5x3", a file path or a bundled name; data_dir
 * may be NULL for the default. */
SF_API sf_status sf_instance_load(const char* ref, const char* data_dir,
                                  sf_instance** out);
SF_API sf_status sf_instance_parse(const char* text, const char* name,
                                   sf_instance** out);
SF_API void sf_instance_free(sf_instance* instance);
SF_API sf_status sf_instance_info(const sf_instance* instance, char** json);
SF_API sf_status sf_instance_to_standard(const sf_instance* instance,
                                         char** text);

/* Schedules. from_json accepts an array or an object with "schedule". */
SF_API sf_status sf_schedule_from_json(const char* json, sf_schedule** out);
SF_API sf_status sf_schedule_to_json(const sf_schedule* schedule, char** json);
SF_API sf_status sf_schedule_demo(sf_schedule** out);
SF_API int64_t sf_schedule_makespan(const sf_schedule* schedule);
SF_API void sf_schedule_free(sf_schedule* schedule);

/* Dispatch with `rule`, then local search when improve_budget >= 0.
 * trace_json may be NULL. */
SF_API sf_status sf_solve(const sf_instance* instance, const char* rule,
                          uint64_t seed, int improve_budget, sf_schedule** out,
                          char** trace_json);

/* windows_json may be NULL or "[{machine,start,end}...]". *ok is 1 when the
 * schedule is feasible. report_json may be NULL. */
SF_API sf_status sf_validate(const sf_instance* instance,
                             const sf_schedule* schedule,
                             const char* windows_json, int* ok,
                             char** report_json);

SF_API void sf_repair_config_default(sf_repair_config* config);

/* Repairs after machine `machine` fails over [t_d, t_d + delta_t). out and
 * outcome_json may each be NULL. */
SF_API sf_status sf_repair(const sf_instance* instance,
                           const sf_schedule* schedule, int machine,
                           int64_t t_d, int64_t delta_t,
                           const sf_repair_config* config, sf_schedule** out,
                           char** outcome_json);

SF_API sf_status sf_generate_scenario(const sf_instance* instance,
                                      uint64_t seed, int failures,
                                      int64_t min_dur, int64_t max_dur,
                                      char** scenario_json);

/* Runs a scenario on `base`. log_path may be NULL; log_jsonl may be NULL. */
SF_API sf_status sf_simulate(const sf_instance* instance,
                             const sf_schedule* base,
                             const char* scenario_json,
                             const sf_repair_config* config,
                             const char* log_path, char** report_json,
                             char** log_jsonl);

/* Rebuilds the final schedule from an event log. base may be NULL. On a
 * corrupt log returns SF_ERR_PARSE and stores the last valid seq in
 * *last_valid_seq when non-NULL. */
SF_API sf_status sf_replay(const char* log_jsonl, const sf_schedule* base,
                           sf_schedule** out, int64_t* last_valid_seq);

/* Request: {"instances":[..], "methods":[..], "data_dir"?, "bounds"?,
 * "seed"?, "failures"?, "min_dur"?, "max_dur"?, "t_wip"?, "swap_budget"?,
 * "timing"?}. csv may be NULL. */
SF_API sf_status sf_bench(const char* request_json, char** result_json,
                          char** csv);

/* Request: {"sizes":[[J,M]..], "trials"?, "seed"?, "t_wip"?,
 * "swap_budget"?, "timing"?}. */
SF_API sf_status sf_probe(const char* request_json, char** result_json);

/* windows_json and title may be NULL. */
SF_API sf_status sf_gantt_svg(const sf_schedule* schedule, int num_machines,
                              const char* windows_json, const char* title,
                              char** svg);

#ifdef __cplusplus
}
#endif

#endif /* SHOPFLOOR_SHOPFLOOR_H_ */
