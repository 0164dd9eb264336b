#ifndef SCHWARZKIT_H
#define SCHWARZKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which half of a rational map to read.
 */
typedef enum SkPart {
  SK_PART_NUMERATOR = 0,
  SK_PART_DENOMINATOR = 1,
} SkPart;

/**
 * Status codes. The nonzero values match the exit codes of the CLI where
 * they overlap.
 */
typedef enum SkStatus {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_POINTER = 1,
  SK_STATUS_INVALID_ARGUMENT = 2,
  SK_STATUS_DEGENERATE = 3,
  SK_STATUS_SOLVER = 4,
  SK_STATUS_PANIC = 5,
} SkStatus;

/**
 * Opaque result of a fiber solve.
 */
typedef struct SkFiberReport SkFiberReport;

/**
 * Opaque rational map `num / den`, stored in lowest terms with a monic
 * denominator.
 */
typedef struct SkRationalMap SkRationalMap;

/**
 * A complex number laid out as two doubles.
 */
typedef struct SkComplex {
  double re;
  double im;
} SkComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sk_last_error(void);

/**
 * Builds `num / den` from ascending coefficient arrays.
 *
 * # Safety
 * `num` and `den` must point to `num_len` and `den_len` values; `out` must
 * be writable. The handle written to `out` is released by
 * [`sk_rational_free`].
 */
enum SkStatus sk_rational_new(const struct SkComplex *num,
                              size_t num_len,
                              const struct SkComplex *den,
                              size_t den_len,
                              struct SkRationalMap **out);

/**
 * # Safety
 * `map` must be null or a handle from this library that was not yet freed.
 */
void sk_rational_free(struct SkRationalMap *map);

/**
 * Copies the coefficients of one half of `map` into `buf`. `len` receives
 * the coefficient count; when `cap` is too small nothing is copied and the
 * call fails with `SK_STATUS_INVALID_ARGUMENT`, so a first call with
 * `cap = 0` sizes the buffer.
 *
 * # Safety
 * `map` must be a live handle, `buf` must hold `cap` values, `len` must be
 * writable.
 */
enum SkStatus sk_rational_coeffs(const struct SkRationalMap *map,
                                 enum SkPart part,
                                 struct SkComplex *buf,
                                 size_t cap,
                                 size_t *len);

/**
 * `map(z)`. A pole gives `SK_STATUS_DEGENERATE`.
 *
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum SkStatus sk_rational_eval(const struct SkRationalMap *map,
                               struct SkComplex z,
                               struct SkComplex *out);

/**
 * The Schwarzian derivative of `map` as a new rational map.
 *
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum SkStatus sk_schwarzian(const struct SkRationalMap *map, struct SkRationalMap **out);

/**
 * Determinant of the order-`d` condition matrix built from the Laurent
 * tail `a[0..len]` (`len >= d` unless `d == 0`).
 *
 * # Safety
 * `a` must point to `len` values and `out` must be writable.
 */
enum SkStatus sk_condition_determinant(size_t d,
                                       const struct SkComplex *a,
                                       size_t len,
                                       struct SkComplex *out);

/**
 * Solves `p'q - q'p = target` over normalized pairs. `target` is monic of
 * even degree `2 mu`, given by its `2 mu + 1` ascending coefficients.
 *
 * # Safety
 * `target` must point to `len` values and `out` must be writable. The
 * report is released by [`sk_fiber_report_free`].
 */
enum SkStatus sk_solve_fiber(const struct SkComplex *target,
                             size_t len,
                             size_t attempts,
                             uint64_t seed,
                             struct SkFiberReport **out);

/**
 * # Safety
 * `report` must be null or a handle from this library that was not yet
 * freed.
 */
void sk_fiber_report_free(struct SkFiberReport *report);

/**
 * Number of distinct solutions in `report`, 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t sk_fiber_report_count(const struct SkFiberReport *report);

/**
 * Number of warnings attached to `report`, 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t sk_fiber_report_warning_count(const struct SkFiberReport *report);

/**
 * Residual of solution `index`.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum SkStatus sk_fiber_report_residual(const struct SkFiberReport *report,
                                       size_t index,
                                       double *out);

/**
 * Solution `index` as the rational map `p / q`.
 *
 * # Safety
 * `report` must be a live handle and `out` writable. The map is released by
 * [`sk_rational_free`].
 */
enum SkStatus sk_fiber_report_map(const struct SkFiberReport *report,
                                  size_t index,
                                  struct SkRationalMap **out);

/**
 * Cross ratio `(a, b; c, d)` of four distinct finite points.
 *
 * # Safety
 * `points` must point to four values and `out` must be writable.
 */
enum SkStatus sk_cross_ratio(const struct SkComplex *points, struct SkComplex *out);

/**
 * Whether four distinct finite points are a Möbius image of the vertices
 * of a regular tetrahedron.
 *
 * # Safety
 * `points` must point to four values and `out` must be writable.
 */
enum SkStatus sk_is_regular_tetrahedron(const struct SkComplex *points, double tol, bool *out);

/**
 * `w2^2 + 12 w0 - 3 w1 w3` for the monic quartic `z^4 + w3 z^3 + ... + w0`,
 * given as `w[0..4]`.
 *
 * # Safety
 * `w` must point to four values and `out` must be writable.
 */
enum SkStatus sk_criticality_discriminant(const struct SkComplex *w, struct SkComplex *out);

/**
 * Number of degree-`d` rational maps with `2d - 2` generic prescribed
 * critical points, up to post-composition. Returns 0 for `d == 0` or on
 * overflow.
 */
uint64_t sk_catalan(size_t d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHWARZKIT_H */
