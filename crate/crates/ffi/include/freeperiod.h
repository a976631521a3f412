#ifndef FREEPERIOD_H
#define FREEPERIOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FplMode {
  FPL_MODE_HEURISTIC = 0,
  FPL_MODE_RIGOROUS = 1,
} FplMode;

typedef enum FplStatus {
  FPL_STATUS_OK = 0,
  FPL_STATUS_NULL_POINTER = 1,
  FPL_STATUS_INVALID_UTF8 = 2,
  FPL_STATUS_PARSE = 3,
  FPL_STATUS_INVALID_ARGUMENT = 4,
  FPL_STATUS_NOT_ALEXANDER = 5,
  FPL_STATUS_COMPUTATION = 6,
  FPL_STATUS_BUFFER_TOO_SMALL = 7,
  FPL_STATUS_PANIC = 8,
} FplStatus;

/**
 * A factorization over the integers.
 */
typedef struct FplFactorization FplFactorization;

/**
 * An integer polynomial.
 */
typedef struct FplPoly FplPoly;

/**
 * The set of n for which a polynomial is n-Hartley.
 */
typedef struct FplProfile FplProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *fpl_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *fpl_version(void);

/**
 * Parses a symbolic polynomial in `t` or an ascending coefficient list.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FplStatus fpl_poly_parse(const char *text, struct FplPoly **out_poly);

/**
 * Builds a polynomial from `len` ascending coefficients.
 *
 * # Safety
 * `coeffs` must point to `len` readable values (or be null with `len == 0`).
 */
enum FplStatus fpl_poly_from_coeffs(const int64_t *coeffs, size_t len, struct FplPoly **out_poly);

/**
 * # Safety
 * `poly` must come from this library and not have been freed; null is ignored.
 */
void fpl_poly_free(struct FplPoly *poly);

/**
 * Degree of the polynomial, `-1` for zero.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_poly_degree(const struct FplPoly *poly, int64_t *degree);

/**
 * Symbolic form; release with `fpl_string_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_poly_to_string(const struct FplPoly *poly, char **text);

/**
 * # Safety
 * `s` must come from this library; null is ignored.
 */
void fpl_string_free(char *s);

/**
 * Complete factorization over the integers.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_factor(const struct FplPoly *poly, struct FplFactorization **result);

/**
 * # Safety
 * `fac` must come from this library; null is ignored.
 */
void fpl_factorization_free(struct FplFactorization *fac);

/**
 * Number of distinct irreducible factors and the overall sign (+1 or -1).
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_factorization_len(const struct FplFactorization *fac,
                                     size_t *len,
                                     int32_t *sign);

/**
 * The `index`-th factor (a new handle) and its multiplicity.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_factorization_factor(const struct FplFactorization *fac,
                                        size_t index,
                                        struct FplPoly **factor,
                                        uint32_t *multiplicity);

/**
 * Hartley profile of a primitive polynomial.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_profile_new(const struct FplPoly *poly,
                               enum FplMode mode,
                               struct FplProfile **profile);

/**
 * # Safety
 * `profile` must come from this library; null is ignored.
 */
void fpl_profile_free(struct FplProfile *profile);

/**
 * Whether the bound behind the profile is unconditional.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_profile_is_rigorous(const struct FplProfile *profile, bool *rigorous);

/**
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_profile_is_n_hartley(const struct FplProfile *profile, uint64_t n, bool *result);

/**
 * Writes the members of the Hartley set (all of them when `finite`, those up
 * to `limit` otherwise) into `buf`. `len` receives the member count; when it
 * exceeds `cap` nothing is written and `FPL_STATUS_BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `buf` must have room for `cap` values (or be null with `cap == 0`).
 */
enum FplStatus fpl_profile_hartley_set(const struct FplProfile *profile,
                                       uint64_t limit,
                                       uint64_t *buf,
                                       size_t cap,
                                       size_t *len,
                                       bool *finite);

/**
 * `E(Δ)`; `defined` is false for products of cyclotomic polynomials.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_profile_e(const struct FplProfile *profile, uint64_t *e, bool *defined);

/**
 * Checks `Δ(t^n) = ±∏ g(ζ^i t)`. `sign` is 0 when the identity fails.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FplStatus fpl_verify_witness(const struct FplPoly *delta,
                                  uint64_t n,
                                  const struct FplPoly *g,
                                  int32_t *sign,
                                  bool *holds);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FREEPERIOD_H */
