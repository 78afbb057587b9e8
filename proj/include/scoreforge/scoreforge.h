/* scoreforge — consistency testing of reported binary-classification
 * performance scores against a described experimental setup.
 *
 * C interface of the shared library. All entry points are thread-safe; error
 * details for the calling thread are available via scoreforge_last_error().
 */
#ifndef SCOREFORGE_H
#define SCOREFORGE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum scoreforge_status {
  SCOREFORGE_OK = 0,
  SCOREFORGE_ERR_INVALID_ARGUMENT = 1,
  /* The document failed schema validation; the result (when provided)
   * carries the per-field diagnostics and exit code 64. */
  SCOREFORGE_ERR_PARSE = 2,
  SCOREFORGE_ERR_INTERNAL = 3
} scoreforge_status;

typedef struct scoreforge_options scoreforge_options;
typedef struct scoreforge_result scoreforge_result;

const char* scoreforge_version(void);

/* Message describing the most recent failure on this thread. */
const char* scoreforge_last_error(void);

/* The JSON schema of the problem-document format (schema/problem.v1.json). */
const char* scoreforge_problem_schema_json(void);

scoreforge_options* scoreforge_options_new(void);
void scoreforge_options_free(scoreforge_options* opts);

/* Report every compatible witness instead of stopping at the default cap. */
scoreforge_status scoreforge_options_set_witnesses_all(scoreforge_options* opts, int enabled);
/* "round" (eps = 10^-k / 2) or "floor_ceil" (eps = 10^-k, the default). */
scoreforge_status scoreforge_options_set_eps_mode(scoreforge_options* opts, const char* mode);
scoreforge_status scoreforge_options_set_node_budget(scoreforge_options* opts, uint64_t nodes);
scoreforge_status scoreforge_options_set_config_budget(scoreforge_options* opts, uint64_t configs);
/* 0 selects the SCOREFORGE_JOBS environment variable, else hardware threads. */
scoreforge_status scoreforge_options_set_jobs(scoreforge_options* opts, int jobs);
/* Enumerate fold configurations only; no consistency tests are run. */
scoreforge_status scoreforge_options_set_count_configs(scoreforge_options* opts, int enabled);

/* Runs every problem in the document. `opts` may be NULL for defaults. On
 * SCOREFORGE_OK and SCOREFORGE_ERR_PARSE, *out holds a result that must be
 * released with scoreforge_result_free(). */
scoreforge_status scoreforge_check(const char* problem_json, const scoreforge_options* opts,
                                   scoreforge_result** out);

/* Schema validation only; same result contract as scoreforge_check. */
scoreforge_status scoreforge_validate(const char* problem_json, scoreforge_result** out);

/* Verdict document (or validation report) as JSON text; owned by the result. */
const char* scoreforge_result_json(const scoreforge_result* result);

/* 0 all consistent, 1 any inconsistent, 2 indeterminate, 64 input error. */
int scoreforge_result_exit_code(const scoreforge_result* result);

void scoreforge_result_free(scoreforge_result* result);

#ifdef __cplusplus
}
#endif

#endif /* SCOREFORGE_H */
