/* prequant.h — public C API for the prequant-lab core.
 *
 * All functions are thread-safe with respect to distinct sessions.  A single
 * session must not be used from two threads at once.
 *
 * Strings returned through `char**` out-parameters are heap-allocated by the
 * library and must be released with pql_string_free().  Status codes other
 * than PQL_OK leave out-parameters untouched.
 */
#ifndef PREQUANT_H
#define PREQUANT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pql_status {
    PQL_OK = 0,
    PQL_ERR_INVALID_ARGUMENT = 1,
    PQL_ERR_BAD_CONFIG = 2,
    PQL_ERR_IO = 3,
    PQL_ERR_INTERNAL = 4
} pql_status;

typedef struct pql_session pql_session;

/* Library version as "major.minor.patch" (static storage, do not free). */
const char* pql_version(void);

/* Create / destroy a session.  A fresh session has no configuration. */
pql_status pql_session_new(pql_session** out);
void pql_session_free(pql_session* s);

/* Human-readable message for the most recent failure on this session
 * (static empty string when there is none; do not free). */
const char* pql_last_error(const pql_session* s);

/* Load a run configuration from a JSON string (see the `schema` query for
 * the accepted document layout). */
pql_status pql_load_config_json(pql_session* s, const char* json_text);

/* Number of worker threads used by pql_run_verify.  0 = serial (default). */
pql_status pql_set_threads(pql_session* s, int n_threads);

/* Override the base RNG seed used for randomized checks. */
pql_status pql_set_seed(pql_session* s, uint64_t seed);

/* Run every check selected by the loaded configuration.  On success the
 * JSON report (one row per check) is returned through *out_report_json.
 * The call succeeds even when individual checks fail; inspect the report
 * and pql_report_all_passed(). */
pql_status pql_run_verify(pql_session* s, char** out_report_json);

/* 1 if the most recent verify run had no failing rows, else 0. */
int pql_report_all_passed(const pql_session* s);

/* Most recent verify report as CSV (same rows as the JSON form). */
pql_status pql_report_csv(const pql_session* s, char** out_csv);

/* Evaluate a single named quantity (see catalog) with JSON parameters;
 * the result is a small JSON document. */
pql_status pql_compute(pql_session* s, const char* quantity,
                       const char* params_json, char** out_result_json);

/* Catalog of named checks/quantities, or the config schema, as JSON. */
pql_status pql_query_catalog(char** out_json);
pql_status pql_query_schema(char** out_json);

/* Release a string allocated by this library. */
void pql_string_free(char* p);

#ifdef __cplusplus
}
#endif

#endif /* PREQUANT_H */
