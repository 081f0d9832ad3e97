#ifndef LIETILT_H
#define LIETILT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum LtStatus {
  LT_STATUS_OK = 0,
  LT_STATUS_INVALID_ARGUMENT = 1,
  LT_STATUS_NOT_PRIME = 2,
  LT_STATUS_NULL_POINTER = 3,
  LT_STATUS_OUT_OF_RANGE = 4,
  LT_STATUS_OVERFLOW = 5,
  LT_STATUS_CONSISTENCY = 6,
  LT_STATUS_INTERNAL = 7,
} LtStatus;

typedef enum LtVerdict {
  LT_VERDICT_TILTING = 0,
  LT_VERDICT_NOT_TILTING_CERTIFIED = 1,
  LT_VERDICT_INCONCLUSIVE = 2,
} LtVerdict;

/**
 * Signed multiplicities in the tilting basis, keyed by highest weight.
 */
typedef struct LtDecomposition LtDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into the library.
 */
const char *lt_last_error(void);

/**
 * Tilting decomposition of the `r`-th tensor power of the natural module.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum LtStatus lt_tensor_power_decomp(uint32_t r, uint64_t p, struct LtDecomposition **out);

/**
 * Tilting decomposition of the `r`-th Lie power. `verdict` may be null.
 *
 * # Safety
 * `out` must be valid for a pointer write; `verdict` null or writable.
 */
enum LtStatus lt_lie_power_decomp(uint32_t r,
                                  uint64_t p,
                                  struct LtDecomposition **out,
                                  enum LtVerdict *verdict);

/**
 * Number of nonzero entries.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t lt_decomposition_len(const struct LtDecomposition *h);

/**
 * Entry `index`, ordered by decreasing weight. Multiplicities beyond the
 * `int64_t` range yield `LT_STATUS_OVERFLOW`.
 *
 * # Safety
 * `h` must be a live handle; `weight` and `mult` writable.
 */
enum LtStatus lt_decomposition_get(const struct LtDecomposition *h,
                                   size_t index,
                                   uint32_t *weight,
                                   int64_t *mult);

/**
 * Decimal string of an entry's multiplicity, for values beyond `int64_t`.
 * Free with [`lt_string_free`]. Returns null on bad input.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
char *lt_decomposition_mult_string(const struct LtDecomposition *h, size_t index);

/**
 * The decomposition as a JSON object. Free with [`lt_string_free`].
 *
 * # Safety
 * `h` must be null or a live handle.
 */
char *lt_decomposition_to_json(const struct LtDecomposition *h);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void lt_decomposition_free(struct LtDecomposition *h);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lt_string_free(char *s);

/**
 * Dimension of the cyclic module generated by the left-normed bracket
 * (requires `p | r`).
 *
 * # Safety
 * `out` must be writable.
 */
enum LtStatus lt_gzeta_dim(uint64_t r, uint64_t p, uint64_t *out);

/**
 * Whether `T(r-1,1)` is a summand of the `r`-th Lie power.
 *
 * # Safety
 * `out` must be writable.
 */
enum LtStatus lt_theorem_b_predicate(uint64_t r, uint64_t p, bool *out);

/**
 * `C(n, k) mod p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LtStatus lt_binom_mod(uint64_t n, uint64_t k, uint64_t p, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIETILT_H */
