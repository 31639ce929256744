#ifndef LDE_H
#define LDE_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which approximation of a closed-form quantity to evaluate.
 */
typedef enum LdeApprox {
  /**
   * Adaptive quadrature of the exact integral.
   */
  LDE_APPROX_EXACT = 0,
  /**
   * First-order delta expansion at the optimal parameter.
   */
  LDE_APPROX_PMS = 1,
  /**
   * Leading post-Newtonian term (weak field).
   */
  LDE_APPROX_LEADING = 2,
} LdeApprox;

/**
 * Result codes. `LDE_STATUS_OK` is zero; everything else is a failure.
 */
typedef enum LdeStatus {
  LDE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  LDE_STATUS_NULL_POINTER = 1,
  /**
   * An argument lies outside the domain of the operation.
   */
  LDE_STATUS_DOMAIN = 2,
  /**
   * The interpolant gap is non-positive inside the interval.
   */
  LDE_STATUS_NON_POSITIVE_GAP = 3,
  /**
   * A search bracket is empty, reversed or not finite.
   */
  LDE_STATUS_INVALID_BRACKET = 4,
  /**
   * An iterative scheme stopped before reaching its tolerance.
   */
  LDE_STATUS_NON_CONVERGENCE = 5,
  /**
   * A root search found no sign change.
   */
  LDE_STATUS_NO_BRACKET = 6,
  /**
   * The output buffer is shorter than the number of values produced.
   */
  LDE_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * Internal error; the library state is unaffected.
   */
  LDE_STATUS_PANIC = 8,
} LdeStatus;

/**
 * Order of the WKB quantization condition.
 */
typedef enum LdeWkbOrder {
  LDE_WKB_ORDER_LEADING = 0,
  LDE_WKB_ORDER_SECOND = 1,
  LDE_WKB_ORDER_FOURTH = 2,
} LdeWkbOrder;

/**
 * Quartic anharmonic oscillator `p²/2m + mω²x²/2 + μx⁴/4`.
 */
typedef struct LdeAnharmonic LdeAnharmonic;

/**
 * Duffing oscillator `x'' = -x - μx³` released from amplitude `A`.
 */
typedef struct LdeDuffing LdeDuffing;

typedef struct LdeComplex {
  double re;
  double im;
} LdeComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *lde_version(void);

/**
 * Message of the most recent failure on this thread, or null if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *lde_last_error_message(void);

/**
 * Validate a Duffing parameter set; `*out` receives a new handle.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LdeStatus lde_duffing_new(double mu, double amplitude, struct LdeDuffing **out);

/**
 * Release a handle from [`lde_duffing_new`]. Null is ignored.
 *
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void lde_duffing_free(struct LdeDuffing *h);

/**
 * Exact period from the complete elliptic integral.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum LdeStatus lde_duffing_period_exact(const struct LdeDuffing *h, double *out);

/**
 * First-order period at the optimal `λ`.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum LdeStatus lde_duffing_period_pms(const struct LdeDuffing *h, double *out);

/**
 * The optimal `λ` of the first-order expansion.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum LdeStatus lde_duffing_lambda_pms(const struct LdeDuffing *h, double *out);

/**
 * Partial sums of orders `0..=order` at `λ` into `partial_sums`, which
 * must hold `order + 1` values. `*max_abs_delta` receives the convergence
 * certificate: the series converges iff it is below 1.
 *
 * # Safety
 * `h` must be a live handle, `partial_sums` valid for `len` writes and
 * `max_abs_delta` valid for writes.
 */
enum LdeStatus lde_duffing_series(const struct LdeDuffing *h,
                                  double lambda,
                                  size_t order,
                                  double *partial_sums,
                                  size_t len,
                                  double *max_abs_delta);

/**
 * Pendulum period for amplitude `theta_max` in `(0, π)`; `approx` is
 * `Exact` or `Pms`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LdeStatus lde_pendulum_period(double theta_max, enum LdeApprox approx, double *out);

/**
 * Light deflection (radians) at closest approach `r0`, with `gm = GM/c²`
 * in the same length unit.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LdeStatus lde_gr_deflection(double gm, double r0, enum LdeApprox approx, double *out);

/**
 * Perihelion shift per orbit (radians) for semi-major axis `a` and
 * eccentricity `ecc`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LdeStatus lde_gr_precession(double gm,
                                 double a,
                                 double ecc,
                                 enum LdeApprox approx,
                                 double *out);

/**
 * Validate an anharmonic oscillator; `*out` receives a new handle.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LdeStatus lde_anharmonic_new(double hbar,
                                  double mass,
                                  double omega,
                                  double mu,
                                  struct LdeAnharmonic **out);

/**
 * Release a handle from [`lde_anharmonic_new`]. Null is ignored.
 *
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void lde_anharmonic_free(struct LdeAnharmonic *h);

/**
 * Energy of level `n` from the WKB condition of the given order.
 *
 * # Safety
 * `h` must be a live handle and `energy` valid for writes.
 */
enum LdeStatus lde_wkb_level(const struct LdeAnharmonic *h,
                             uint32_t n,
                             enum LdeWkbOrder order,
                             double *energy);

/**
 * Large-`n` asymptotic formula for level `n`.
 *
 * # Safety
 * `h` must be a live handle and `energy` valid for writes.
 */
enum LdeStatus lde_wkb_asymptotic(const struct LdeAnharmonic *h, uint32_t n, double *energy);

/**
 * Lowest `len` eigenvalues by matrix diagonalization, for reference.
 *
 * # Safety
 * `h` must be a live handle and `levels` valid for `len` writes.
 */
enum LdeStatus lde_wkb_exact_levels(const struct LdeAnharmonic *h, double *levels, size_t len);

/**
 * ζ(s) from the accelerated series with parameter `lambda > 0`, truncated
 * after `terms` outer terms.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LdeStatus lde_zeta(struct LdeComplex s, double lambda, size_t terms, struct LdeComplex *out);

/**
 * Euler–Maclaurin reference value of ζ(s) for `Re s > 0`, with its
 * estimated absolute error in `*error` (which may be null).
 *
 * # Safety
 * `out` must be valid for writes; `error` null or valid for writes.
 */
enum LdeStatus lde_zeta_reference(struct LdeComplex s, struct LdeComplex *out, double *error);

/**
 * The optimal parameter `2^{-n}` for ζ(n), `n >= 2`.
 */
double lde_zeta_lambda_pms(uint32_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LDE_H */
