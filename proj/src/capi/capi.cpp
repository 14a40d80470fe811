#include "prequant.h"

#include <cstring>
#include <string>

// Placeholder implementation; filled in once the suite/report layer lands.
// Kept minimal so the shared library links from day one.

namespace {

char* dup_string(const std::string& s) {
    char* p = new char[s.size() + 1];
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

} // namespace

struct pql_session {
    std::string last_error;
};

extern "C" {

const char* pql_version(void) { return "0.1.0"; }

pql_status pql_session_new(pql_session** out) {
    if (!out) return PQL_ERR_INVALID_ARGUMENT;
    *out = new pql_session();
    return PQL_OK;
}

void pql_session_free(pql_session* s) { delete s; }

const char* pql_last_error(const pql_session* s) {
    return s ? s->last_error.c_str() : "";
}

pql_status pql_load_config_json(pql_session* s, const char*) {
    if (!s) return PQL_ERR_INVALID_ARGUMENT;
    s->last_error = "not implemented";
    return PQL_ERR_INTERNAL;
}

pql_status pql_set_threads(pql_session* s, int) {
    return s ? PQL_OK : PQL_ERR_INVALID_ARGUMENT;
}

pql_status pql_set_seed(pql_session* s, uint64_t) {
    return s ? PQL_OK : PQL_ERR_INVALID_ARGUMENT;
}

pql_status pql_run_verify(pql_session* s, char**) {
    if (!s) return PQL_ERR_INVALID_ARGUMENT;
    s->last_error = "not implemented";
    return PQL_ERR_INTERNAL;
}

int pql_report_all_passed(const pql_session*) { return 0; }

pql_status pql_report_csv(const pql_session* s, char**) {
    return s ? PQL_ERR_INTERNAL : PQL_ERR_INVALID_ARGUMENT;
}

pql_status pql_compute(pql_session* s, const char*, const char*, char**) {
    if (!s) return PQL_ERR_INVALID_ARGUMENT;
    s->last_error = "not implemented";
    return PQL_ERR_INTERNAL;
}

pql_status pql_query_catalog(char** out_json) {
    if (!out_json) return PQL_ERR_INVALID_ARGUMENT;
    *out_json = dup_string("[]");
    return PQL_OK;
}

pql_status pql_query_schema(char** out_json) {
    if (!out_json) return PQL_ERR_INVALID_ARGUMENT;
    *out_json = dup_string("{}");
    return PQL_OK;
}

void pql_string_free(char* p) { delete[] p; }

} // extern "C"
