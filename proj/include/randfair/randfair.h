/* C interface to the randfair solver library.
 *
 * Objects are opaque handles released with their matching *_free function.
 * Every fallible call returns an rf_status; on failure the thread-local
 * rf_last_error_* accessors describe the error. Strings returned through
 * `char **out` are heap-allocated and must be released with rf_string_free.
 * Rationals cross the boundary as "num/den" strings (decimals such as "0.25"
 * are accepted on input).
 */
#ifndef RANDFAIR_RANDFAIR_H
#define RANDFAIR_RANDFAIR_H

#include <stddef.h>

#if defined(RANDFAIR_BUILDING_LIBRARY)
#define RF_API __attribute__((visibility("default")))
#else
#define RF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rf_distribution rf_distribution;
typedef struct rf_solution rf_solution;

/* Values double as CLI exit codes. */
typedef enum rf_status {
  RF_OK = 0,
  RF_ERROR_INTERNAL = 1,
  RF_ERROR_VALIDATION = 2, /* schema, mass sum, alpha range, ... */
  RF_ERROR_UNDEFINED = 3,  /* undefined metric or infeasible problem */
  RF_ERROR_RESOURCE = 4    /* enumeration cap exceeded */
} rf_status;

typedef enum rf_notion {
  RF_NOTION_DP = 0,
  RF_NOTION_PE = 1,
  RF_NOTION_EO = 2,
  RF_NOTION_ALL = 3 /* rf_verify only: every notion whose rates are defined */
} rf_notion;

typedef enum rf_format { RF_FORMAT_JSON = 0, RF_FORMAT_CSV = 1 } rf_format;

RF_API const char *rf_version(void);

/* Error kind name (e.g. "TotalMassNotOne"), message, and a single-line JSON
 * diagnostic {"error": kind, "message": text} for the last failed call on
 * this thread. */
RF_API const char *rf_last_error_kind(void);
RF_API const char *rf_last_error_message(void);
RF_API const char *rf_last_error_json(void);

RF_API rf_status rf_parse_notion(const char *text, rf_notion *out);
/* Validates a fraction/decimal string as a cost weight in (0,1). */
RF_API rf_status rf_check_alpha(const char *alpha);

RF_API rf_status rf_distribution_parse(const char *text, rf_format format, rf_distribution **out);
RF_API rf_status rf_distribution_flip_labels(const rf_distribution *dist, rf_distribution **out);
RF_API void rf_distribution_free(rf_distribution *dist);
RF_API size_t rf_distribution_group_count(const rf_distribution *dist);
RF_API size_t rf_distribution_cell_count(const rf_distribution *dist);

RF_API rf_status rf_solve(const rf_distribution *dist, rf_notion notion, const char *alpha,
                          rf_solution **out);
RF_API void rf_solution_free(rf_solution *solution);
RF_API rf_status rf_solution_json(const rf_solution *solution, char **out);
/* JSON: {"breakpoints", "values"[, "values01"]}; CSV: rate,loss01 at alpha
 * 1/2 (0-1 loss), rate,loss otherwise. */
RF_API rf_status rf_solution_curve(const rf_solution *solution, rf_format format, char **out);
RF_API rf_status rf_solution_rate(const rf_solution *solution, char **out);
RF_API rf_status rf_solution_loss(const rf_solution *solution, char **out);

/* {"representation": ..., "audit": ...}. The audit enumerates 2^points
 * labelings and fails with RF_ERROR_RESOURCE above `cap` points. */
RF_API rf_status rf_represent(const rf_distribution *dist, rf_notion notion, const char *alpha,
                              unsigned cap, char **out);

/* Loss and fairness report(s) for a classifier JSON document. */
RF_API rf_status rf_verify(const rf_distribution *dist, const char *classifier_json,
                           rf_notion notion, const char *alpha, char **out);

/* Solver vs. vertex-enumeration oracle vs. best deterministic classifier.
 * *agree is set to 1 when solver and oracle losses match exactly. */
RF_API rf_status rf_oracle(const rf_distribution *dist, rf_notion notion, const char *alpha,
                           unsigned cap, char **out, int *agree);

RF_API void rf_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* RANDFAIR_RANDFAIR_H */
