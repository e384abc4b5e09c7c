#ifndef SEMITREE_H
#define SEMITREE_H

/* Generated by cbindgen from the semitree-ffi sources. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SemitreeEvaluator {
  SEMITREE_EVALUATOR_CLOSED_FORM = 0,
  SEMITREE_EVALUATOR_RECURRENCE = 1,
  SEMITREE_EVALUATOR_ARC_SUM = 2,
} SemitreeEvaluator;

typedef enum SemitreeParity {
  SEMITREE_PARITY_PLUS = 0,
  SEMITREE_PARITY_MINUS = 1,
} SemitreeParity;

typedef enum SemitreeStatus {
  SEMITREE_STATUS_OK = 0,
  SEMITREE_STATUS_NULL_POINTER = 1,
  SEMITREE_STATUS_INVALID_ARGUMENT = 2,
  SEMITREE_STATUS_ON_CUT = 3,
  SEMITREE_STATUS_POLE = 4,
  SEMITREE_STATUS_NEEDS_DIRECTION = 5,
  SEMITREE_STATUS_PARITY_MISMATCH = 6,
  SEMITREE_STATUS_CAPACITY = 7,
  SEMITREE_STATUS_DIVERGENT = 8,
  SEMITREE_STATUS_BUFFER_TOO_SMALL = 9,
  SEMITREE_STATUS_PANIC = 10,
} SemitreeStatus;

typedef enum SemitreeVerdict {
  SEMITREE_VERDICT_INSIDE = 0,
  SEMITREE_VERDICT_BOUNDARY = 1,
  SEMITREE_VERDICT_OUTSIDE = 2,
} SemitreeVerdict;

/**
 * Opaque handle to a tree `T(q₊, q₋)`.
 */
typedef struct SemitreeTree SemitreeTree;

typedef struct SemitreeComplex {
  double re;
  double im;
} SemitreeComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a handle; release it with [`semitree_tree_free`].
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum SemitreeStatus semitree_tree_new(uint32_t q_plus, uint32_t q_minus, struct SemitreeTree **out);

/**
 * # Safety
 * `tree` must be null or a handle from [`semitree_tree_new`] not yet freed.
 */
void semitree_tree_free(struct SemitreeTree *tree);

/**
 * Copies the calling thread's last error message, or returns null when there
 * is none. Release with [`semitree_string_free`].
 */
char *semitree_last_error(void);

/**
 * # Safety
 * `s` must be null or a string from [`semitree_last_error`] not yet freed.
 */
void semitree_string_free(char *s);

/**
 * # Safety
 * `tree` must be a live handle; `a` and `b` valid for writes.
 */
enum SemitreeStatus semitree_endpoints(const struct SemitreeTree *tree, double *a, double *b);

/**
 * `F±(γ)` off the cuts.
 *
 * # Safety
 * `tree` must be a live handle; `out` valid for writes.
 */
enum SemitreeStatus semitree_hitting_f(const struct SemitreeTree *tree,
                                       struct SemitreeComplex gamma,
                                       enum SemitreeParity sign,
                                       struct SemitreeComplex *out);

/**
 * `F̃±(γ)` off the cuts.
 *
 * # Safety
 * `tree` must be a live handle; `out` valid for writes.
 */
enum SemitreeStatus semitree_hitting_ft(const struct SemitreeTree *tree,
                                        struct SemitreeComplex gamma,
                                        enum SemitreeParity sign,
                                        struct SemitreeComplex *out);

/**
 * `B(γ)` and `B̃(γ) = 1/B(γ)`.
 *
 * # Safety
 * `tree` must be a live handle; `b` and `bt` valid for writes.
 */
enum SemitreeStatus semitree_b_of_gamma(const struct SemitreeTree *tree,
                                        struct SemitreeComplex gamma,
                                        struct SemitreeComplex *b,
                                        struct SemitreeComplex *bt);

/**
 * Writes `φ_0..φ_{n_max}` into `out[0..=n_max]`; `len` is the capacity of `out`.
 *
 * # Safety
 * `tree` must be a live handle; `out` valid for `len` writes.
 */
enum SemitreeStatus semitree_spherical(const struct SemitreeTree *tree,
                                       struct SemitreeComplex gamma,
                                       enum SemitreeEvaluator evaluator,
                                       size_t n_max,
                                       struct SemitreeComplex *out,
                                       size_t len);

/**
 * `ρ_p`; pass `INFINITY` for `p = ∞`.
 *
 * # Safety
 * `tree` must be a live handle; `out` valid for writes.
 */
enum SemitreeStatus semitree_spectral_radius(const struct SemitreeTree *tree,
                                             double p,
                                             double *out);

/**
 * Membership of `γ` in the `ℓ^p` spectrum; `isolated_zero` may be null.
 *
 * # Safety
 * `tree` must be a live handle; `verdict` valid for writes; `isolated_zero` null or valid.
 */
enum SemitreeStatus semitree_membership(const struct SemitreeTree *tree,
                                        double p,
                                        struct SemitreeComplex gamma,
                                        enum SemitreeVerdict *verdict,
                                        bool *isolated_zero);

/**
 * # Safety
 * `tree` must be a live handle; `out` valid for writes.
 */
enum SemitreeStatus semitree_p_crit(const struct SemitreeTree *tree, double *out);

/**
 * # Safety
 * `tree` must be a live handle; `out` valid for writes.
 */
enum SemitreeStatus semitree_split_exponent(const struct SemitreeTree *tree, double *out);

/**
 * Seeded Monte Carlo estimate of `F±(1)`.
 *
 * # Safety
 * `tree` must be a live handle; `estimate` and `std_error` valid for writes.
 */
enum SemitreeStatus semitree_monte_carlo(const struct SemitreeTree *tree,
                                         enum SemitreeParity start,
                                         uint64_t walks,
                                         uint64_t cap,
                                         uint64_t seed,
                                         double *estimate,
                                         double *std_error);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SEMITREE_H */
