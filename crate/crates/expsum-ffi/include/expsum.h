#ifndef EXPSUM_H
#define EXPSUM_H

/* Generated from the expsum-ffi crate sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result discriminant of every fallible call.
 */
typedef enum ExpsumStatus {
  /**
   * The call succeeded and all out-parameters were written.
   */
  EXPSUM_STATUS_OK = 0,
  /**
   * An input violated a documented precondition.
   */
  EXPSUM_STATUS_INVALID_PARAMETER = 1,
  /**
   * The request would exceed a work budget and was refused.
   */
  EXPSUM_STATUS_BUDGET_EXCEEDED = 2,
  /**
   * An internal routine failed; this indicates a bug.
   */
  EXPSUM_STATUS_INTERNAL_ERROR = 3,
  /**
   * A required pointer argument was null.
   */
  EXPSUM_STATUS_NULL_POINTER = 4,
  /**
   * A result does not fit in the C-side integer type.
   */
  EXPSUM_STATUS_OVERFLOW = 5,
} ExpsumStatus;

/**
 * Exact multiplicity table of the pair `(sum of n_i^2, sum of n_i^4)` over
 * p-tuples from an integer range; behind this handle every count is an
 * exact-arithmetic operation.
 */
typedef struct ExpsumSpectrum ExpsumSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.
 *
 * The pointer stays valid until the next failing call on the same thread.
 * Never null; holds an empty string before any failure.
 *
 * # Safety
 *
 * The returned pointer must not be freed, and must not be read after a
 * subsequent failing call from the same thread.
 */
const char *expsum_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *expsum_version(void);

/**
 * Builds the spectrum of p-tuples over the integers `lo < n <= hi`.
 *
 * # Safety
 *
 * `out` must be a valid pointer. On `Ok`, the handle written to `*out` owns
 * the spectrum and must be released with [`expsum_spectrum_free`].
 */
enum ExpsumStatus expsum_spectrum_new(int64_t lo,
                                      int64_t hi,
                                      uint32_t p,
                                      struct ExpsumSpectrum **out);

/**
 * Releases a spectrum handle. Passing null is a no-op.
 *
 * # Safety
 *
 * `spectrum` must be null or a handle obtained from
 * [`expsum_spectrum_new`] that has not already been freed.
 */
void expsum_spectrum_free(struct ExpsumSpectrum *spectrum);

/**
 * Number of tuples the spectrum aggregates (its range length to the p-th
 * power).
 *
 * # Safety
 *
 * `spectrum` must be a live handle from [`expsum_spectrum_new`]; `out`
 * must be a valid pointer.
 */
enum ExpsumStatus expsum_spectrum_tuple_count(const struct ExpsumSpectrum *spectrum, uint64_t *out);

/**
 * Ordered pairs of tuples whose square sums differ by at most `t2_num /
 * t2_den` and quartic sums by at most `t4_num / t4_den` (exact rational
 * comparison).
 *
 * # Safety
 *
 * `spectrum` must be a live handle from [`expsum_spectrum_new`]; `out`
 * must be a valid pointer.
 */
enum ExpsumStatus expsum_spectrum_pair_count(const struct ExpsumSpectrum *spectrum,
                                             int64_t t2_num,
                                             int64_t t2_den,
                                             int64_t t4_num,
                                             int64_t t4_den,
                                             uint64_t *out);

/**
 * Mean value of `|S|^(2p)` over the full alpha period and the gamma window
 * `[-N^-3, N^-3]`, for the block `(N, 2N]`.
 *
 * # Safety
 *
 * `out_value` and `out_error` must be valid pointers.
 */
enum ExpsumStatus expsum_window_integral(int64_t n,
                                         uint32_t p,
                                         double *out_value,
                                         double *out_error);

/**
 * Distance between the block sum of `e(alpha n^2 + gamma n^4)` over
 * `(N, 2N]` and its stationary-phase transform.
 *
 * # Safety
 *
 * `out_residual` must be a valid pointer.
 */
enum ExpsumStatus expsum_transform_residual(double alpha,
                                            double gamma,
                                            int64_t n,
                                            double *out_residual);

/**
 * Weyl sum of `e(alpha n^k)` for `1 <= n <= N` with a floating frequency.
 * `out_precision_warning` (optional, may be null) receives 1 when a phase
 * left the error-free reduction range.
 *
 * # Safety
 *
 * `out_re` and `out_im` must be valid pointers;
 * `out_precision_warning` may be null.
 */
enum ExpsumStatus expsum_weyl_sum(uint32_t k,
                                  uint64_t n,
                                  double alpha,
                                  double *out_re,
                                  double *out_im,
                                  int *out_precision_warning);

/**
 * Weyl sum with an exact rational frequency `num/den`, evaluated by
 * modular arithmetic (no rounding of the frequency).
 *
 * # Safety
 *
 * `out_re` and `out_im` must be valid pointers.
 */
enum ExpsumStatus expsum_weyl_sum_rational(uint32_t k,
                                           uint64_t n,
                                           int64_t num,
                                           int64_t den,
                                           double *out_re,
                                           double *out_im);

/**
 * Number of `h in [1, H]` with `alpha h` within `delta` of an integer.
 *
 * # Safety
 *
 * `out` must be a valid pointer.
 */
enum ExpsumStatus expsum_near_integer_count(double alpha, uint64_t h, double delta, uint64_t *out);

/**
 * Continued-fraction approximation `alpha = a/q + theta` with the largest
 * `q <= q_cap`; guarantees `gcd(a, q) = 1` and `|theta| <= q^-2`.
 *
 * # Safety
 *
 * `out_a`, `out_q`, and `out_theta` must be valid pointers.
 */
enum ExpsumStatus expsum_best_rational(double alpha,
                                       uint64_t q_cap,
                                       int64_t *out_a,
                                       int64_t *out_q,
                                       double *out_theta);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EXPSUM_H */
