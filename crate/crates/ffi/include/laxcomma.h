#ifndef LAXCOMMA_H
#define LAXCOMMA_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `Ok` is zero.
 */
typedef enum LaxcommaStatus {
  LAXCOMMA_STATUS_OK = 0,
  LAXCOMMA_STATUS_NULL_ARGUMENT = 1,
  LAXCOMMA_STATUS_INVALID_UTF8 = 2,
  /**
   * The spec text does not parse or a block fails validation.
   */
  LAXCOMMA_STATUS_INVALID_SPEC = 3,
  /**
   * A construction failed or its inputs do not fit together.
   */
  LAXCOMMA_STATUS_CONSTRUCTION = 4,
  LAXCOMMA_STATUS_UNKNOWN_SUITE = 5,
  LAXCOMMA_STATUS_BOUNDS_TOO_LARGE = 6,
  LAXCOMMA_STATUS_BUDGET_EXHAUSTED = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  LAXCOMMA_STATUS_INTERNAL = 8,
} LaxcommaStatus;

/**
 * A validated spec file.
 */
typedef struct LaxcommaSpec LaxcommaSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates `text`. On success `*out` receives a handle to
 * release with [`laxcomma_spec_free`].
 *
 * # Safety
 * `text` is a nul-terminated string; `out` is writable.
 */
enum LaxcommaStatus laxcomma_spec_load(const char *text, struct LaxcommaSpec **out);

/**
 * # Safety
 * `spec` is null or a handle not yet freed.
 */
void laxcomma_spec_free(struct LaxcommaSpec *spec);

/**
 * Number of blocks in the spec, or 0 for a null handle.
 *
 * # Safety
 * `spec` is null or a live handle.
 */
size_t laxcomma_spec_block_count(const struct LaxcommaSpec *spec);

/**
 * Comma category of two functors of the spec, or comma object of two
 * morphisms of a po-category. `within` may be null.
 *
 * # Safety
 * Strings are nul-terminated; `spec` is live; `out` is writable.
 */
enum LaxcommaStatus laxcomma_comma(const struct LaxcommaSpec *spec,
                                   const char *a,
                                   const char *b,
                                   const char *within,
                                   char **out);

/**
 * Strict pullback, as [`laxcomma_comma`].
 *
 * # Safety
 * As [`laxcomma_comma`].
 */
enum LaxcommaStatus laxcomma_pullback(const struct LaxcommaSpec *spec,
                                      const char *a,
                                      const char *b,
                                      const char *within,
                                      char **out);

/**
 * Pointwise Kan extension of `j` along `h`, right when `right` is true.
 *
 * # Safety
 * As [`laxcomma_comma`].
 */
enum LaxcommaStatus laxcomma_kan(const struct LaxcommaSpec *spec,
                                 const char *h,
                                 const char *j,
                                 bool right,
                                 char **out);

/**
 * Coequalizer of `g, h` in preorders. With `a` and `b` both non-null,
 * also the lax slice coequalizer over their common codomain.
 *
 * # Safety
 * As [`laxcomma_comma`].
 */
enum LaxcommaStatus laxcomma_coeq(const struct LaxcommaSpec *spec,
                                  const char *g,
                                  const char *h,
                                  const char *a,
                                  const char *b,
                                  char **out);

/**
 * Whether `f -| g` in a po-category of the spec. `within` may be null.
 *
 * # Safety
 * As [`laxcomma_comma`].
 */
enum LaxcommaStatus laxcomma_adjoint_check(const struct LaxcommaSpec *spec,
                                           const char *f,
                                           const char *g,
                                           const char *within,
                                           char **out);

/**
 * # Safety
 * As [`laxcomma_comma`].
 */
enum LaxcommaStatus laxcomma_kz_witness(const struct LaxcommaSpec *spec, const char *b, char **out);

/**
 * Runs every `command` block of the spec; the result is a JSON array.
 *
 * # Safety
 * `spec` is live; `out` is writable.
 */
enum LaxcommaStatus laxcomma_run_commands(const struct LaxcommaSpec *spec, char **out);

/**
 * Runs a property suite. `max_elems` of 0 keeps the suite's default.
 * A suite with failing records still returns `Ok`; read `totals.fail`.
 *
 * # Safety
 * `name` is nul-terminated; `out` is writable.
 */
enum LaxcommaStatus laxcomma_suite(const char *name, size_t max_elems, char **out);

/**
 * Releases a string returned through an `out` parameter.
 *
 * # Safety
 * `s` is null or came from this library and was not freed yet.
 */
void laxcomma_string_free(char *s);

/**
 * Message for the last failure on this thread, empty after a success.
 * Valid until the next call on the same thread.
 */
const char *laxcomma_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAXCOMMA_H */
