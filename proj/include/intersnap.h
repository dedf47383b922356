/* Copyright (c) 2026 The InterSnap Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API for the InterSnap simulator: receipt-enforced cross-chain
 * transaction sets, need-based snapshot archival to an encrypted
 * content-addressed store, and auditor-based dispute resolution, all
 * driven as deterministic scenario runs.
 *
 * Usage pattern:
 *   isnap_scenario* sc = NULL;
 *   isnap_scenario_parse(json_text, &sc);          // or isnap_scenario_builtin
 *   isnap_run_result* res = NULL;
 *   isnap_scenario_run(sc, seed, "out_dir", &res); // writes metrics + state
 *   puts(isnap_result_summary_json(res));
 *   isnap_result_free(res);
 *   isnap_scenario_free(sc);
 *
 * All functions returning isnap_status leave a machine-readable error
 * record (JSON) retrievable via isnap_last_error() on failure. Handles are
 * opaque; every *_free accepts NULL.
 */
#ifndef INTERSNAP_H
#define INTERSNAP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum isnap_status {
    ISNAP_OK = 0,
    ISNAP_ERR_INVALID_ARG = 1,
    ISNAP_ERR_CONFIG = 2,
    ISNAP_ERR_IO = 3,
    ISNAP_ERR_RUN = 4,
    ISNAP_ERR_VERIFY_FAILED = 5,
    ISNAP_ERR_INTERNAL = 6
} isnap_status;

typedef struct isnap_scenario isnap_scenario;
typedef struct isnap_run_result isnap_run_result;

const char* isnap_version(void);

/* Parses and validates a scenario document (schema 1). */
isnap_status isnap_scenario_parse(const char* json_text, isnap_scenario** out);

/* Packaged fault demonstrations; fault_case is 1, 2, or 3. */
isnap_status isnap_scenario_builtin(int fault_case, isnap_scenario** out);

/* Canonical JSON of a loaded scenario; owned by the handle. */
const char* isnap_scenario_json(const isnap_scenario* scenario);

void isnap_scenario_free(isnap_scenario* scenario);

/* Runs the scenario to completion under the given seed. When out_dir is
 * non-NULL and non-empty, the run directory is populated with world.json,
 * scenario.json, metric CSV files, summary.json, and the content store. */
isnap_status isnap_scenario_run(const isnap_scenario* scenario, uint64_t seed,
                                const char* out_dir, isnap_run_result** out);

/* Both strings are owned by the result handle. */
const char* isnap_result_summary_json(const isnap_run_result* result);
const char* isnap_result_state_hash(const isnap_run_result* result);

void isnap_result_free(isnap_run_result* result);

/* Re-checks all invariants over a previously exported run directory.
 * *report_json_out (caller-owned, release with isnap_string_free) always
 * receives the full check report when the directory could be read.
 * Returns ISNAP_OK when every check passed, ISNAP_ERR_VERIFY_FAILED
 * otherwise. */
isnap_status isnap_verify_run(const char* out_dir, char** report_json_out);

void isnap_string_free(char* s);

/* Machine-readable record of the most recent failure on this thread:
 * {"code": <int>, "error": "<name>", "detail": "<text>"} */
const char* isnap_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* INTERSNAP_H */
