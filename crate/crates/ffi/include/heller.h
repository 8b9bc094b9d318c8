#ifndef HELLER_H
#define HELLER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HellerStatus {
  HELLER_STATUS_OK = 0,
  HELLER_STATUS_NULL_POINTER = 1,
  /**
   * A parameter or buffer length was rejected.
   */
  HELLER_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A numerical routine failed; see `heller_last_error`.
   */
  HELLER_STATUS_NUMERICAL = 3,
  /**
   * Internal panic caught at the boundary.
   */
  HELLER_STATUS_PANIC = 4,
} HellerStatus;

typedef enum HellerMethod {
  HELLER_METHOD_HELLER = 0,
  HELLER_METHOD_BROAD = 1,
  HELLER_METHOD_JMATRIX_INTERP = 2,
  HELLER_METHOD_JMATRIX_EXACT = 3,
  HELLER_METHOD_ORACLE = 4,
} HellerMethod;

/**
 * Opaque handle to a model truncated to `N` basis states.
 */
typedef struct HellerModel HellerModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Modified Chebyshev chain with first diagonal `a` and first coupling `b`.
 */
enum HellerStatus heller_chebyshev_new(double a, double b, size_t n, struct HellerModel **out);

/**
 * Free partial wave of angular momentum `ell` in the Laguerre basis of
 * scale `lambda`.
 */
enum HellerStatus heller_partial_wave_new(uint32_t ell,
                                          double lambda,
                                          size_t n,
                                          struct HellerModel **out);

/**
 * Releases a handle; null is ignored.
 */
void heller_free(struct HellerModel *model);

/**
 * Basis size `N`, or 0 for a null handle.
 */
size_t heller_size(const struct HellerModel *model);

/**
 * Writes the `N` ascending eigenvalues into `out`.
 */
enum HellerStatus heller_eigenvalues(const struct HellerModel *model, double *out, size_t len);

/**
 * Writes the `N` derivative weights of `method` into `out`. `all_knots`
 * selects every fractional-index knot for the interpolation schemes
 * instead of the default set.
 */
enum HellerStatus heller_weights(const struct HellerModel *model,
                                 enum HellerMethod method,
                                 bool all_knots,
                                 double *out,
                                 size_t len);

/**
 * `x = zeta^{-1}(energy)`, the continuous eigenvalue index.
 */
enum HellerStatus heller_zeta_inverse(const struct HellerModel *model, double energy, double *out);

/**
 * Message of the last failure on this thread, or null if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *heller_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HELLER_H */
