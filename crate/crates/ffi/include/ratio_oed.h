#ifndef RATIO_OED_H
#define RATIO_OED_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RatioOedStatus {
  RATIO_OED_STATUS_OK = 0,
  RATIO_OED_STATUS_NULL_POINTER = 1,
  /**
   * Invalid argument or data.
   */
  RATIO_OED_STATUS_VALIDATION = 2,
  /**
   * Degenerate intercept or other numeric failure.
   */
  RATIO_OED_STATUS_NUMERIC = 3,
  RATIO_OED_STATUS_PANIC = 4,
  /**
   * The caller's output buffer is too short.
   */
  RATIO_OED_STATUS_BUFFER_TOO_SMALL = 5,
} RatioOedStatus;

typedef enum RatioOedMethod {
  RATIO_OED_METHOD_NORMAL_HOMO = 0,
  RATIO_OED_METHOD_NORMAL_HETERO = 1,
  RATIO_OED_METHOD_BAYESIAN_BOOTSTRAP = 2,
  RATIO_OED_METHOD_PARAMETRIC_BOOTSTRAP = 3,
  RATIO_OED_METHOD_RESIDUAL_BOOTSTRAP = 4,
  RATIO_OED_METHOD_WILD_BOOTSTRAP = 5,
} RatioOedMethod;

/**
 * Opaque dataset handle.
 */
typedef struct RatioOedDataset RatioOedDataset;

/**
 * Opaque relative error scale `h(x)`.
 */
typedef struct RatioOedH RatioOedH;

typedef struct RatioOedFit {
  double b0;
  double b1;
  double theta_hat;
  /**
   * Residual variance with divisor n.
   */
  double s2_e;
  size_t n;
} RatioOedFit;

typedef struct RatioOedInterval {
  double lower;
  double theta_hat;
  double upper;
  size_t degenerate_replicates;
} RatioOedInterval;

typedef struct RatioOedBakeoff {
  double median_a;
  double median_b;
  double intercentile_a;
  double intercentile_b;
  /**
   * a / b.
   */
  double intercentile_ratio;
  double stderr_ratio;
  double variance_ratio;
} RatioOedBakeoff;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *ratio_oed_last_error(void);

/**
 * Optimal fraction of runs at `x_min` for a homoskedastic line.
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum RatioOedStatus ratio_oed_rho_star(double x_min, double x_max, double theta0, double *out);

/**
 * Closed-form allocation of `n` runs between the endpoints.
 *
 * # Safety
 * `at_min` and `at_max` must be null or valid for a write.
 */
enum RatioOedStatus ratio_oed_optimal_design_homo(double x_min,
                                                  double x_max,
                                                  size_t n,
                                                  double theta0,
                                                  size_t *at_min,
                                                  size_t *at_max);

/**
 * Copies `len` pairs into a new dataset handle.
 *
 * # Safety
 * `x` and `y` must point to `len` doubles; `out` must be valid for a write.
 */
enum RatioOedStatus ratio_oed_dataset_new(const double *x,
                                          const double *y,
                                          size_t len,
                                          struct RatioOedDataset **out);

/**
 * # Safety
 * `ds` must be null or a handle from [`ratio_oed_dataset_new`] not yet freed.
 */
void ratio_oed_dataset_free(struct RatioOedDataset *ds);

/**
 * `h(x) = x^gamma`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum RatioOedStatus ratio_oed_h_power(double gamma, struct RatioOedH **out);

/**
 * Piecewise-linear `h` through `(x[i], rel_sigma[i])`, flat beyond the ends.
 *
 * # Safety
 * `x` and `rel_sigma` must point to `len` doubles; `out` must be valid for
 * a write.
 */
enum RatioOedStatus ratio_oed_h_table(const double *x,
                                      const double *rel_sigma,
                                      size_t len,
                                      struct RatioOedH **out);

/**
 * # Safety
 * `h` must be null or a live handle from this library.
 */
void ratio_oed_h_free(struct RatioOedH *h);

/**
 * Numerical design search; writes `n` sorted points to `xs` (capacity
 * `xs_len`) and the attained criterion to `criterion`.
 *
 * # Safety
 * `h` must be a live handle; `xs` must be valid for `xs_len` writes;
 * `criterion` must be valid for a write.
 */
enum RatioOedStatus ratio_oed_optimal_design_hetero(double x_min,
                                                    double x_max,
                                                    size_t n,
                                                    double theta0,
                                                    const struct RatioOedH *h,
                                                    size_t random_starts,
                                                    uint64_t seed,
                                                    double *xs,
                                                    size_t xs_len,
                                                    double *criterion);

/**
 * # Safety
 * `ds` must be a live handle; `out` must be valid for a write.
 */
enum RatioOedStatus ratio_oed_fit(const struct RatioOedDataset *ds, struct RatioOedFit *out);

/**
 * Confidence interval for the ratio. `replicates` and `seed` are ignored
 * by the normal methods; `se_width` selects `z * sqrt(v)` instead of
 * `z * v` for them.
 *
 * # Safety
 * `ds` must be a live handle; `out` must be valid for a write.
 */
enum RatioOedStatus ratio_oed_ci(const struct RatioOedDataset *ds,
                                 enum RatioOedMethod method,
                                 double alpha,
                                 size_t replicates,
                                 uint64_t seed,
                                 bool se_width,
                                 struct RatioOedInterval *out);

/**
 * Simulates two designs under a homoskedastic line with the same seed.
 *
 * # Safety
 * `a` and `b` must point to `a_len` and `b_len` doubles; `out` must be
 * valid for a write.
 */
enum RatioOedStatus ratio_oed_bakeoff(const double *a,
                                      size_t a_len,
                                      const double *b,
                                      size_t b_len,
                                      double beta0,
                                      double theta,
                                      double sigma,
                                      size_t n_sim,
                                      uint64_t seed,
                                      struct RatioOedBakeoff *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RATIO_OED_H */
