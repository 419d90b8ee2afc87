#ifndef KEYPOLY_H
#define KEYPOLY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KpModel {
  KP_MODEL_DEMAZURE = 0,
  KP_MODEL_KOHNERT = 1,
  KP_MODEL_QUASIKEY = 2,
} KpModel;

typedef enum KpStatus {
  KP_STATUS_OK = 0,
  KP_STATUS_NULL_POINTER = 1,
  KP_STATUS_INVALID_UTF8 = 2,
  KP_STATUS_PARSE_ERROR = 3,
  KP_STATUS_INVALID_ARGUMENT = 4,
  KP_STATUS_OUT_OF_RANGE = 5,
  KP_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * A Rust panic was caught, e.g. coefficient overflow.
   */
  KP_STATUS_INTERNAL = 7,
} KpStatus;

/**
 * Opaque weak composition.
 */
typedef struct KpComposition KpComposition;

/**
 * Opaque polynomial with integer coefficients.
 */
typedef struct KpPolynomial KpPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into this library from the same thread.
 */
const char *kp_last_error(void);

/**
 * Parses text such as `"0,2,1,2"` or `"[0,2,1,2]"`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum KpStatus kp_composition_parse(const char *text, struct KpComposition **out);

/**
 * Builds a composition from `len` parts.
 *
 * # Safety
 * `parts` must point to `len` readable values (it may be null when `len` is
 * 0) and `out` must be valid.
 */
enum KpStatus kp_composition_from_parts(const uint32_t *parts,
                                        size_t len,
                                        struct KpComposition **out);

/**
 * # Safety
 * `alpha` must be null or a handle from this library, not yet freed.
 */
void kp_composition_free(struct KpComposition *alpha);

/**
 * # Safety
 * `alpha` must be a live handle and `out` a valid pointer.
 */
enum KpStatus kp_composition_len(const struct KpComposition *alpha, size_t *out);

/**
 * Writes whether `alpha` avoids every KM pattern, i.e. whether its key
 * polynomial is multiplicity-free.
 *
 * # Safety
 * `alpha` must be a live handle and `out` a valid pointer.
 */
enum KpStatus kp_avoids_km(const struct KpComposition *alpha, bool *out);

/**
 * Expands the key polynomial of `alpha` with the chosen model.
 *
 * # Safety
 * `alpha` must be a live handle and `out` a valid pointer.
 */
enum KpStatus kp_key_polynomial(const struct KpComposition *alpha,
                                enum KpModel model,
                                struct KpPolynomial **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void kp_polynomial_free(struct KpPolynomial *p);

/**
 * # Safety
 * `p` must be a live handle; `nvars` and `nterms` valid pointers.
 */
enum KpStatus kp_polynomial_shape(const struct KpPolynomial *p, size_t *nvars, size_t *nterms);

/**
 * Copies term `index` (terms are in ascending exponent order) into
 * `exponents[0..nvars]` and `coeff`.
 *
 * # Safety
 * `p` must be a live handle, `exponents` must have room for `capacity`
 * values, and `coeff` must be valid.
 */
enum KpStatus kp_polynomial_term(const struct KpPolynomial *p,
                                 size_t index,
                                 uint32_t *exponents,
                                 size_t capacity,
                                 int64_t *coeff);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum KpStatus kp_polynomial_is_multiplicity_free(const struct KpPolynomial *p, bool *out);

/**
 * Writes the terms as a JSON array of `{"exponents": [...], "coeff": c}`.
 * Free the string with [`kp_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum KpStatus kp_polynomial_to_json(const struct KpPolynomial *p, char **out);

/**
 * Checks the classification over `{0..=max_part}^n` and writes the JSON
 * report; `passed` is false when counterexamples were found. `jobs` = 0 uses
 * every core.
 *
 * # Safety
 * `report` and `passed` must be valid pointers.
 */
enum KpStatus kp_verify_classification(size_t n,
                                       uint32_t max_part,
                                       size_t jobs,
                                       char **report,
                                       bool *passed);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void kp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KEYPOLY_H */
