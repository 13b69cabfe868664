#ifndef MONOGENIC_H
#define MONOGENIC_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MonoRuleKind {
  MONO_RULE_KIND_SPHERE = 0,
  MONO_RULE_KIND_BALL = 1,
} MonoRuleKind;

/**
 * Result codes shared by every entry point.
 */
typedef enum MonoStatus {
  MONO_STATUS_OK = 0,
  MONO_STATUS_NULL_POINTER = 1,
  MONO_STATUS_INVALID_ARGUMENT = 2,
  MONO_STATUS_PARSE = 3,
  MONO_STATUS_DIMENSION_MISMATCH = 4,
  MONO_STATUS_SINGULAR = 5,
  MONO_STATUS_GUARD = 6,
  MONO_STATUS_DEGREE_TOO_LARGE = 7,
  MONO_STATUS_PANIC = 8,
} MonoStatus;

/**
 * Opaque algebra handle.
 */
typedef struct MonoAlgebra MonoAlgebra;

/**
 * Opaque Cauchy kernel handle.
 */
typedef struct MonoKernel MonoKernel;

/**
 * Opaque exact polynomial handle with a cached float evaluator.
 */
typedef struct MonoPolynomial MonoPolynomial;

/**
 * Opaque quadrature rule handle.
 */
typedef struct MonoRule MonoRule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mono_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mono_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from a `mono_*` function documented as returning an owned
 * string, or be null.
 */
void mono_string_free(char *s);

/**
 * Builds a shipped algebra. `kind` is one of `complex`, `quaternion`,
 * `octonion`, `clifford`, `dual-quaternion`; `m < 0` selects the default.
 *
 * # Safety
 * `kind` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MonoStatus mono_algebra_new(const char *kind, int32_t m, struct MonoAlgebra **out);

/**
 * Loads and validates an algebra from its JSON spec.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MonoStatus mono_algebra_from_json(const char *json, struct MonoAlgebra **out);

/**
 * Serializes the algebra as JSON; release the result with [`mono_string_free`].
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum MonoStatus mono_algebra_to_json(const struct MonoAlgebra *alg, char **out);

/**
 * # Safety
 * `alg` must be a handle from this library or null; it is invalid afterwards.
 */
void mono_algebra_free(struct MonoAlgebra *alg);

/**
 * Basis size of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be a live handle or null.
 */
size_t mono_algebra_dim(const struct MonoAlgebra *alg);

/**
 * `m`, the number of imaginary frame units, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be a live handle or null.
 */
size_t mono_algebra_m(const struct MonoAlgebra *alg);

/**
 * Runs the sampled axiom checks; `*all_passed` receives the verdict.
 *
 * # Safety
 * `alg` must be a live handle and `all_passed` a valid pointer.
 */
enum MonoStatus mono_algebra_check(const struct MonoAlgebra *alg, uint64_t seed, bool *all_passed);

/**
 * `out = a * b` in floating point; all buffers have `mono_algebra_dim` entries.
 *
 * # Safety
 * Buffers must hold `len` doubles.
 */
enum MonoStatus mono_algebra_mul(const struct MonoAlgebra *alg,
                                 const double *a,
                                 const double *b,
                                 double *out,
                                 size_t len);

/**
 * Fueter polynomial `P_k`; `k` has `m` entries.
 *
 * # Safety
 * `k` must hold `len` values and `out` be a valid pointer.
 */
enum MonoStatus mono_fueter_polynomial(const struct MonoAlgebra *alg,
                                       const uint32_t *k,
                                       size_t len,
                                       struct MonoPolynomial **out);

/**
 * Left CK-extension of the monomial `x_1^k_1 ... x_m^k_m`.
 *
 * # Safety
 * `k` must hold `len` values and `out` be a valid pointer.
 */
enum MonoStatus mono_ck_monomial(const struct MonoAlgebra *alg,
                                 const uint32_t *k,
                                 size_t len,
                                 struct MonoPolynomial **out);

/**
 * Parses a polynomial from JSON over `alg`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MonoStatus mono_polynomial_from_json(const struct MonoAlgebra *alg,
                                          const char *json,
                                          struct MonoPolynomial **out);

/**
 * Serializes a polynomial; release the result with [`mono_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum MonoStatus mono_polynomial_to_json(const struct MonoPolynomial *p, char **out);

/**
 * Whether `dbar p` (left, or right when `right` is set) is exactly zero.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum MonoStatus mono_polynomial_is_monogenic(const struct MonoPolynomial *p, bool right, bool *out);

/**
 * Evaluates at `x` (`m + 1` coordinates) into `out` (`dim` values).
 *
 * # Safety
 * `x` must hold `x_len` and `out` `out_len` doubles.
 */
enum MonoStatus mono_polynomial_eval(const struct MonoPolynomial *p,
                                     const double *x,
                                     size_t x_len,
                                     double *out,
                                     size_t out_len);

/**
 * # Safety
 * `p` must be a handle from this library or null; it is invalid afterwards.
 */
void mono_polynomial_free(struct MonoPolynomial *p);

/**
 * The Cauchy kernel `E` of the algebra.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum MonoStatus mono_kernel_new(const struct MonoAlgebra *alg, struct MonoKernel **out);

/**
 * Evaluates `E(x)`; returns `MONO_STATUS_SINGULAR` at the origin.
 *
 * # Safety
 * `x` must hold `x_len` and `out` `out_len` doubles.
 */
enum MonoStatus mono_kernel_eval(const struct MonoKernel *kernel,
                                 const double *x,
                                 size_t x_len,
                                 double *out,
                                 size_t out_len);

/**
 * # Safety
 * `kernel` must be a handle from this library or null.
 */
void mono_kernel_free(struct MonoKernel *kernel);

/**
 * Quadrature rule on the sphere or ball of `radius` about `center`
 * (`m + 1` coordinates).
 *
 * # Safety
 * `center` must hold `center_len` doubles and `out` be a valid pointer.
 */
enum MonoStatus mono_rule_new(enum MonoRuleKind kind,
                              const double *center,
                              size_t center_len,
                              double radius,
                              size_t resolution,
                              uint64_t seed,
                              struct MonoRule **out);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `rule` must be a live handle or null.
 */
size_t mono_rule_len(const struct MonoRule *rule);

/**
 * Sum of the weights, or NaN for a null handle.
 *
 * # Safety
 * `rule` must be a live handle or null.
 */
double mono_rule_weight_sum(const struct MonoRule *rule);

/**
 * `∫ p` over the rule.
 *
 * # Safety
 * Handles must be live; `out` must hold `out_len` doubles.
 */
enum MonoStatus mono_integrate(const struct MonoRule *rule,
                               const struct MonoPolynomial *p,
                               double *out,
                               size_t out_len);

/**
 * Cauchy integral of `p` over a sphere rule at `x`. `*reliable` is false
 * when `x` lies within a tenth of the radius of the sphere.
 *
 * # Safety
 * Handles must be live; `x` holds `x_len`, `out` holds `out_len` doubles;
 * `reliable` may be null.
 */
enum MonoStatus mono_cauchy_integral(const struct MonoRule *rule,
                                     const struct MonoPolynomial *p,
                                     const double *x,
                                     size_t x_len,
                                     double *out,
                                     size_t out_len,
                                     bool *reliable);

/**
 * # Safety
 * `rule` must be a handle from this library or null.
 */
void mono_rule_free(struct MonoRule *rule);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOGENIC_H */
