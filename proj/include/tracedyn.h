/*
   Copyright 2026 tracedyn developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/* C API of the tracedyn shared library: opaque handles + status codes.
 * Every call that can fail returns a td_status; td_context_last_error()
 * yields the diagnostic of the most recent failure on that context.
 * Handles are destroyed with their td_*_destroy function; destroying NULL
 * is a no-op. The library never prints; all results come back through
 * report handles.
 */

#ifndef TRACEDYN_H
#define TRACEDYN_H

#include <stdint.h>

#if defined(_WIN32)
#  define TD_API __declspec(dllexport)
#else
#  define TD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
    TD_OK = 0,
    TD_ERR_CONFIG = 1,    /* bad scenario/model/parameters */
    TD_ERR_IO = 2,        /* unreadable file, malformed JSON, write failure */
    TD_ERR_NUMERICAL = 3, /* NaN/overflow, refused integration */
    TD_ERR_INVARIANT = 4, /* a checked invariant or tolerance failed */
    TD_ERR_INTERNAL = 5
} td_status;

typedef struct td_context td_context;
typedef struct td_scenario td_scenario;
typedef struct td_report td_report;

TD_API const char* td_version(void);

TD_API td_status td_context_create(td_context** out);
TD_API void td_context_destroy(td_context* ctx);

/* Diagnostic message of the last failing call on this context
 * (empty string when none). The pointer stays valid until the next call
 * on the same context. */
TD_API const char* td_context_last_error(const td_context* ctx);

TD_API td_status td_context_set_out_dir(td_context* ctx, const char* path);
TD_API td_status td_context_set_threads(td_context* ctx, int threads);
TD_API td_status td_context_set_seed_override(td_context* ctx, uint64_t seed);
TD_API td_status td_context_clear_seed_override(td_context* ctx);

TD_API td_status td_scenario_load_file(td_context* ctx, const char* path,
                                       td_scenario** out);
TD_API td_status td_scenario_load_string(td_context* ctx, const char* json_text,
                                         td_scenario** out);
/* "evolve", "ensemble", "gravastar" or "check" */
TD_API const char* td_scenario_kind(const td_scenario* sc);
TD_API void td_scenario_destroy(td_scenario* sc);

/* Executes the scenario; declared outputs are written under the context's
 * out_dir only on success. */
TD_API td_status td_run_scenario(td_context* ctx, const td_scenario* sc,
                                 td_report** out);

/* Runs one invariant suite: algebra, derivative, conservation, liouville,
 * ensemble or gravastar. Returns TD_OK with a report even when checks
 * fail; td_report_passed() tells the outcome. */
TD_API td_status td_run_check(td_context* ctx, const char* suite,
                              td_report** out);

TD_API int td_report_passed(const td_report* rep);
/* Structured results (JSON) / human-readable rendering. Pointers are owned
 * by the report. */
TD_API const char* td_report_json(const td_report* rep);
TD_API const char* td_report_text(const td_report* rep);
TD_API void td_report_destroy(td_report* rep);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TRACEDYN_H */
