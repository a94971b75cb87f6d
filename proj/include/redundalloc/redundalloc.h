/* C interface to the redundalloc library.
 *
 * A session wraps one parsed run specification (system structure, copula,
 * marginals, costs). All functions return RDA_OK on success; on failure the
 * thread-local message from rda_last_error() describes what went wrong.
 * Strings returned through char** are owned by the caller and must be
 * released with rda_string_free().
 */
#ifndef REDUNDALLOC_H
#define REDUNDALLOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rda_session rda_session;

typedef enum rda_status {
  RDA_OK = 0,
  RDA_ERR_VALIDATION = 2, /* bad spec, bad arguments, infeasible input */
  RDA_ERR_NUMERIC = 3,    /* quadrature failure, degenerate denominator */
  RDA_ERR_BAD_HANDLE = 4,
  RDA_ERR_IO = 5
} rda_status;

/* Accounting mode for the age-replacement objectives (cost2/cost4). */
typedef enum rda_accounting {
  RDA_ACCOUNTING_CONSISTENT = 0,
  RDA_ACCOUNTING_REFERENCE = 1
} rda_accounting;

const char* rda_version(void);
const char* rda_last_error(void);
void rda_string_free(char* text);

rda_status rda_session_create(const char* spec_json, rda_session** out);
rda_status rda_session_create_file(const char* path, rda_session** out);
void rda_session_free(rda_session* session);

/* Number of component types, or -1 on a bad handle. */
int rda_types(const rda_session* session);

/* Run a named command ("reliability", "mttf", "cost1-grid", "cost2-grid",
 * "cost3-grid", "cost4-grid", "optimize", "tau-opt", "simulate",
 * "signature") with a JSON options object (may be NULL or empty). The
 * result is CSV or JSON text depending on the command. */
rda_status rda_run(rda_session* session, const char* command,
                   const char* options_json, char** out_text);

/* Direct numeric evaluations. Vectors carry one entry per component type. */
rda_status rda_reliability(rda_session* session, double t, double* out);
rda_status rda_redundant_reliability(rda_session* session, const int* v,
                                     size_t len, double t, double* out);
rda_status rda_mttf(rda_session* session, const int* v, size_t len,
                    double* out);
rda_status rda_expected_failed(rda_session* session, int type_index_1based,
                               double* out);
rda_status rda_cost1(rda_session* session, const int* v, size_t len,
                     double* out);
rda_status rda_cost2(rda_session* session, const int* v, size_t len,
                     double tau, rda_accounting accounting, double* out);
rda_status rda_cost3(rda_session* session, double* out);
rda_status rda_cost4(rda_session* session, double tau,
                     rda_accounting accounting, double* out);
rda_status rda_simulate_cost1(rda_session* session, const int* v, size_t len,
                              long samples, uint64_t seed, double* mean,
                              double* std_error);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REDUNDALLOC_H */
