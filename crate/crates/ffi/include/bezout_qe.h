#ifndef BEZOUT_QE_H
#define BEZOUT_QE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum BqStatus {
  BQ_STATUS_OK = 0,
  BQ_STATUS_NULL_POINTER = 1,
  BQ_STATUS_INVALID_UTF8 = 2,
  BQ_STATUS_PARSE_ERROR = 3,
  BQ_STATUS_CAPABILITY_ERROR = 4,
  BQ_STATUS_FAILED = 5,
  BQ_STATUS_PANIC = 6,
} BqStatus;

/**
 * A ring backend.
 */
typedef struct BqBackend BqBackend;

/**
 * A pp formula bound to the backend it was parsed with.
 */
typedef struct BqFormula BqFormula;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call on this thread; do not free it.
 */
const char *bq_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void bq_string_free(char *s);

/**
 * Parses a backend selector: `z`, `q_poly`, `z_loc:<p>`, `q_poly_loc:<p>`.
 *
 * # Safety
 * `selector` must be a nul-terminated string; `out` must be writable.
 */
enum BqStatus bq_backend_new(const char *selector, struct BqBackend **out);

/**
 * # Safety
 * `b` must come from [`bq_backend_new`] and not have been freed. Null is ignored.
 */
void bq_backend_free(struct BqBackend *b);

/**
 * Parses a pp formula.
 *
 * # Safety
 * Pointers must be valid; `src` nul-terminated.
 */
enum BqStatus bq_formula_parse(const struct BqBackend *backend,
                               const char *src,
                               struct BqFormula **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed. Null is ignored.
 */
void bq_formula_free(struct BqFormula *f);

/**
 * Canonical text of a formula.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BqStatus bq_formula_to_string(const struct BqFormula *f, char **out);

/**
 * Eliminates quantifiers; the formula's backend must be a valuation ring.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BqStatus bq_qe(const struct BqFormula *f, struct BqFormula **out);

/**
 * Guarded decomposition as a JSON array of `{guard, body}`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BqStatus bq_decompose_json(const struct BqFormula *f, char **out);

/**
 * Truth of the formula at `params` (e.g. `y=6,z=[1;2]`) in `module`
 * (`free:<n>`, `cyclic:<elem>`, `field`).
 *
 * # Safety
 * Pointers must be valid; strings nul-terminated.
 */
enum BqStatus bq_eval(const struct BqFormula *f, const char *module, const char *params, bool *out);

/**
 * Decides a sentence; writes `{verdict, certificate}` as JSON.
 *
 * # Safety
 * Pointers must be valid; `src` nul-terminated.
 */
enum BqStatus bq_decide_json(const struct BqBackend *backend, const char *src, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BEZOUT_QE_H */
