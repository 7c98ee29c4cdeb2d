#ifndef CREMONA_H
#define CREMONA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum CremonaStatus {
  CREMONA_STATUS_OK = 0,
  CREMONA_STATUS_NULL_POINTER = 1,
  CREMONA_STATUS_INVALID_ARGUMENT = 2,
  CREMONA_STATUS_DIMENSION_MISMATCH = 3,
  /**
   * The class has `v.K > 0`.
   */
  CREMONA_STATUS_K_POSITIVE = 4,
  /**
   * A result does not fit the C type.
   */
  CREMONA_STATUS_OVERFLOW = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  CREMONA_STATUS_INTERNAL = 6,
} CremonaStatus;

/**
 * Nef verdict.
 */
typedef enum CremonaVerdict {
  CREMONA_VERDICT_NEF = 0,
  CREMONA_VERDICT_NOT_NEF = 1,
} CremonaVerdict;

/**
 * Opaque handle to a class in the Picard lattice.
 */
typedef struct CremonaClass CremonaClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *cremona_last_error(void);

/**
 * Creates a class from `len = n + 1` coordinates `x_0, ..., x_n`.
 *
 * # Safety
 * `coords` must point to `len` readable values; `out` must be writable.
 */
enum CremonaStatus cremona_class_new(const int64_t *coords, size_t len, struct CremonaClass **out);

/**
 * Parses a comma-separated coordinate list such as `"3,-1,-1,-1"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CremonaStatus cremona_class_parse(const char *text, struct CremonaClass **out);

/**
 * Releases a class. Null is ignored.
 *
 * # Safety
 * `class` must come from this library and not be used afterwards.
 */
void cremona_class_free(struct CremonaClass *class_);

/**
 * Number of blown-up points `n`.
 *
 * # Safety
 * `class` must be a live handle; `out` must be writable.
 */
enum CremonaStatus cremona_class_n(const struct CremonaClass *class_, size_t *out);

/**
 * Copies the `n + 1` coordinates into `buf` of capacity `cap`.
 *
 * # Safety
 * `class` must be a live handle; `buf` must hold `cap` values.
 */
enum CremonaStatus cremona_class_coords(const struct CremonaClass *class_,
                                        int64_t *buf,
                                        size_t cap);

/**
 * Renders a class as `(x_0,...,x_n)`.
 *
 * # Safety
 * `class` must be a live handle; `out` must be writable.
 */
enum CremonaStatus cremona_class_to_string(const struct CremonaClass *class_, char **out);

/**
 * Intersection pairing `a . b` with form `diag(1, -1, ..., -1)`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum CremonaStatus cremona_pairing(const struct CremonaClass *a,
                                   const struct CremonaClass *b,
                                   int64_t *out);

/**
 * Reduces a class with `v.K <= 0` into the fundamental cone.
 * `reduced` receives the reduced class, `in_cone` whether `v` is nef, and
 * `json` (optional, may be null) the full result as JSON.
 *
 * # Safety
 * `class` must be a live handle; non-null out-pointers must be writable.
 */
enum CremonaStatus cremona_reduce(const struct CremonaClass *class_,
                                  struct CremonaClass **reduced,
                                  bool *in_cone,
                                  char **json);

/**
 * Nef test. With `max_degree < 0` the exact reduction method is used
 * (requires `v.K <= 0`); otherwise the curve check up to that degree.
 *
 * # Safety
 * `class` must be a live handle; `verdict` must be writable; `json` may be null.
 */
enum CremonaStatus cremona_nef_test(const struct CremonaClass *class_,
                                    int64_t max_degree,
                                    enum CremonaVerdict *verdict,
                                    char **json);

/**
 * Number of (-1)-classes with `n` points and degree at most `max_degree`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CremonaStatus cremona_curve_count(size_t n, uint64_t max_degree, size_t *out);

/**
 * Cartan matrix of `polytope` (`p_tilde`, `p`, `p_minus`, `fundamental`) as a
 * JSON array of rows of rendered entries.
 *
 * # Safety
 * `polytope` must be a NUL-terminated string; `out` must be writable.
 */
enum CremonaStatus cremona_cartan_json(const char *polytope, size_t n, char **out);

/**
 * Runs the quick (`full = false`) or full check suite. `passed` receives
 * whether every check passed; `json` (optional) the report.
 *
 * # Safety
 * `passed` must be writable; `json` may be null.
 */
enum CremonaStatus cremona_verify(bool full, uint64_t seed, bool *passed, char **json);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cremona_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CREMONA_H */
