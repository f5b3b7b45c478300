/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef CAPUTO_H
#define CAPUTO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call. Zero is success.
 */
typedef enum {
  CAPUTO_STATUS_OK = 0,
  CAPUTO_STATUS_NULL_POINTER = 1,
  /**
   * Input outside the supported domain, including invalid orders and
   * configuration values.
   */
  CAPUTO_STATUS_DOMAIN = 2,
  /**
   * Series or quadrature did not reach the tolerance.
   */
  CAPUTO_STATUS_NO_CONVERGENCE = 3,
  /**
   * A gamma or lower-parameter pole was hit.
   */
  CAPUTO_STATUS_POLE = 4,
  /**
   * A result could not be certified at the configured precision.
   */
  CAPUTO_STATUS_PRECISION = 5,
  /**
   * An internal panic was caught.
   */
  CAPUTO_STATUS_PANIC = 6,
} CaputoStatus;

/**
 * Function families, mirroring the engine's catalog.
 */
typedef enum {
  CAPUTO_FUNCTION_SIN_POW = 0,
  CAPUTO_FUNCTION_COS_POW = 1,
  CAPUTO_FUNCTION_SINH_POW = 2,
  CAPUTO_FUNCTION_COSH_POW = 3,
  CAPUTO_FUNCTION_PLANE_WAVE = 4,
  CAPUTO_FUNCTION_ARCSIN_POW = 5,
  CAPUTO_FUNCTION_ARCCOS_POW = 6,
  CAPUTO_FUNCTION_ARCTAN_POW = 7,
  CAPUTO_FUNCTION_ARCCOT_POW = 8,
  CAPUTO_FUNCTION_EXP_POW = 9,
  CAPUTO_FUNCTION_LORENTZIAN = 10,
  CAPUTO_FUNCTION_SHIFTED_POLY = 11,
} CaputoFunction;

/**
 * Opaque precision configuration.
 */
typedef struct CaputoConfig CaputoConfig;

/**
 * A value with its error estimate. `value_im` is zero for real families.
 */
typedef struct {
  double value;
  double value_im;
  double abs_error;
  size_t terms_used;
  bool converged;
} CaputoResult;

/**
 * `f'(t)` supplied by the caller, with an opaque context pointer.
 */
typedef double (*CaputoDerivativeFn)(double t, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *caputo_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *caputo_version(void);

/**
 * New configuration with default tolerances. Free with
 * [`caputo_config_free`].
 */
CaputoConfig *caputo_config_new(void);

/**
 * # Safety
 * `cfg` is null or a handle from [`caputo_config_new`] not yet freed.
 */
void caputo_config_free(CaputoConfig *cfg);

/**
 * Relative tolerance of series and quadrature. Rejected values leave the
 * handle unchanged.
 *
 * # Safety
 * `cfg` is null or a live handle.
 */
CaputoStatus caputo_config_set_rel_tol(CaputoConfig *cfg, double rel_tol);

/**
 * Working precision in decimal digits; above 16 selects extended precision.
 *
 * # Safety
 * `cfg` is null or a live handle.
 */
CaputoStatus caputo_config_set_working_digits(CaputoConfig *cfg, uint32_t digits);

/**
 * Cap on series terms.
 *
 * # Safety
 * `cfg` is null or a live handle.
 */
CaputoStatus caputo_config_set_max_terms(CaputoConfig *cfg, size_t max_terms);

/**
 * Gauss rule size of the quadrature oracles.
 *
 * # Safety
 * `cfg` is null or a live handle.
 */
CaputoStatus caputo_config_set_quad_nodes(CaputoConfig *cfg, size_t nodes);

/**
 * Caputo derivative of order `alpha` in [0, 1] of a catalog family at
 * `x >= 0`. `beta` is the scale (the width for the Lorentzian) and `xi`
 * the shift of the polynomial.
 *
 * # Safety
 * `cfg` is null or a live handle; `out` is valid for writes.
 */
CaputoStatus caputo_eval(const CaputoConfig *cfg,
                         CaputoFunction function,
                         uint32_t n,
                         double beta,
                         double xi,
                         double alpha,
                         double x,
                         CaputoResult *out);

/**
 * `pFq[upper; lower; z]`. Either array may be null when its length is 0.
 *
 * # Safety
 * `upper`/`lower` point to `n_upper`/`n_lower` readable doubles; `out` is
 * valid for writes.
 */
CaputoStatus caputo_pfq(const CaputoConfig *cfg,
                        const double *upper,
                        size_t n_upper,
                        const double *lower,
                        size_t n_lower,
                        double z,
                        CaputoResult *out);

/**
 * Gamma function.
 *
 * # Safety
 * `out` is valid for writes.
 */
CaputoStatus caputo_gamma(double x, double *out);

/**
 * Hermite function of real order `alpha` in [0, 1].
 *
 * # Safety
 * `cfg` is null or a live handle; `out` is valid for writes.
 */
CaputoStatus caputo_hermite(const CaputoConfig *cfg, double alpha, double x, double *out);

/**
 * Liouville–Caputo derivative of `exp(-beta x^2)`.
 *
 * # Safety
 * `cfg` is null or a live handle; `out` is valid for writes.
 */
CaputoStatus caputo_lc_gaussian(const CaputoConfig *cfg,
                                double alpha,
                                double beta,
                                double x,
                                double *out);

/**
 * Caputo derivative of order `alpha` in (0, 1) at `x > 0` by quadrature of
 * a caller-supplied `f'`, evaluated only on `[0, x]`.
 *
 * # Safety
 * `cfg` is null or a live handle; `fprime` must be safe to call with
 * `user_data` from this thread; `out` is valid for writes.
 */
CaputoStatus caputo_quadrature_eval(const CaputoConfig *cfg,
                                    CaputoDerivativeFn fprime,
                                    void *user_data,
                                    double alpha,
                                    double x,
                                    CaputoResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAPUTO_H */
