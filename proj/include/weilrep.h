/* C interface to the verification toolkit: build a configuration, run the
 * selected checks, and read back the rendered report.
 *
 * All functions returning int use the status codes below.  Strings returned
 * through char** are heap-allocated and must be released with
 * wr_string_free().
 */
#ifndef WEILREP_H
#define WEILREP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  WR_OK = 0,           /* operation succeeded and all checks passed */
  WR_CHECK_FAILED = 1, /* run completed but at least one check failed */
  WR_CONFIG_ERROR = 2  /* invalid configuration or argument */
};

typedef struct wr_config wr_config;
typedef struct wr_report wr_report;

/* --- configuration ------------------------------------------------------ */

/* Defaults: q = 3, case "all", tolerance 1e-6, seed 0, format "json",
 * every applicable check, no dense oracle, no large fields. */
wr_config* wr_config_new(void);
void wr_config_free(wr_config* cfg);

int wr_config_set_q(wr_config* cfg, uint32_t q);
/* name: "triple", "fxe", "cubic" or "all" */
int wr_config_set_case(wr_config* cfg, const char* name);
int wr_config_set_tolerance(wr_config* cfg, double tol);
int wr_config_set_seed(wr_config* cfg, uint64_t seed);
/* fmt: "json" or "csv" */
int wr_config_set_format(wr_config* cfg, const char* fmt);
/* Restrict the run to named checks; call once per name.  Known names:
 * chartab (alias orthogonality), orbits, homomorphism, appendix2,
 * decomposition. */
int wr_config_add_check(wr_config* cfg, const char* name);
int wr_config_set_dense_oracle(wr_config* cfg, int enabled);
int wr_config_set_allow_large(wr_config* cfg, int enabled);

/* --- execution ---------------------------------------------------------- */

/* Runs the configured checks.  On WR_OK or WR_CHECK_FAILED, *out receives a
 * report handle.  On WR_CONFIG_ERROR, *out is set to NULL and
 * wr_last_error() describes the problem. */
int wr_run(const wr_config* cfg, wr_report** out);

void wr_report_free(wr_report* rep);
/* 1 iff every executed check passed. */
int wr_report_pass(const wr_report* rep);
/* The report rendered in the configured format; NULL only on allocation
 * failure. */
char* wr_report_text(const wr_report* rep);

/* Character table dump as CSV (rows = irreducible labels, columns =
 * conjugacy classes, entries "re,im").  degree in {1, 2, 3} selects the
 * coefficient field of size q^degree.  Returns WR_CONFIG_ERROR and sets
 * *out to NULL on invalid input. */
int wr_chartab_csv(uint32_t q, uint32_t degree, char** out);

/* Message for the most recent failure on this thread ("" if none). */
const char* wr_last_error(void);

void wr_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* WEILREP_H */
