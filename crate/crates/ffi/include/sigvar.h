#ifndef SIGVAR_H
#define SIGVAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SigvarCheck {
  // Group-like for the quasi-shuffle product.
  SIGVAR_CHECK_GROUPLIKE_QUASI_SHUFFLE = 0,
  // Group-like for the shuffle product.
  SIGVAR_CHECK_GROUPLIKE_SHUFFLE = 1,
  // Primitive (Lie) for the shuffle product.
  SIGVAR_CHECK_LIE_SHUFFLE = 2,
} SigvarCheck;

typedef enum SigvarHoffmanMap {
  SIGVAR_HOFFMAN_MAP_PHI = 0,
  SIGVAR_HOFFMAN_MAP_PSI = 1,
  SIGVAR_HOFFMAN_MAP_PHI_STAR = 2,
  SIGVAR_HOFFMAN_MAP_PSI_STAR = 3,
} SigvarHoffmanMap;

typedef enum SigvarStatus {
  SIGVAR_STATUS_OK = 0,
  SIGVAR_STATUS_NULL_POINTER = 1,
  SIGVAR_STATUS_INVALID_UTF8 = 2,
  SIGVAR_STATUS_INVALID_ARGUMENT = 3,
  SIGVAR_STATUS_PARSE = 4,
  SIGVAR_STATUS_DIMENSION_MISMATCH = 5,
  SIGVAR_STATUS_HEIGHT_MISMATCH = 6,
  SIGVAR_STATUS_CONSTANT_TERM = 7,
  SIGVAR_STATUS_OUT_OF_SPACE = 8,
  // A membership check ran and found a violated relation.
  SIGVAR_STATUS_CHECK_FAILED = 9,
  SIGVAR_STATUS_PANIC = 10,
  SIGVAR_STATUS_INTERNAL = 11,
} SigvarStatus;

// Opaque truncated tensor.
typedef struct SigvarTensor SigvarTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next `sigvar_*` call on the same thread.
const char *sigvar_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void sigvar_string_free(char *s);

// Releases a tensor handle. Null is ignored.
//
// # Safety
// `t` must come from this library and not be freed twice.
void sigvar_tensor_free(struct SigvarTensor *t);

// Signature truncated at `height` of an integer series of `len` increments,
// given row-major as `len * dim` values.
//
// # Safety
// `values` must point to `len * dim` readable values (it may be null when
// `len` is 0); `out` must be writable.
enum SigvarStatus sigvar_dsign_i64(const int64_t *values,
                                   uintptr_t len,
                                   uintptr_t dim,
                                   uintptr_t height,
                                   struct SigvarTensor **out);

// Parses a tensor from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SigvarStatus sigvar_tensor_from_json(const char *json, struct SigvarTensor **out);

// Canonical JSON form of a tensor.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SigvarStatus sigvar_tensor_to_json(const struct SigvarTensor *t, char **out);

// Number of variables of the tensor space.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SigvarStatus sigvar_tensor_dim(const struct SigvarTensor *t, uintptr_t *out);

// Truncation height of the tensor.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SigvarStatus sigvar_tensor_height(const struct SigvarTensor *t, uintptr_t *out);

// Coefficient of a word such as `"12.3"` (`""` for the empty word), as an
// exact rational string like `"-7/2"`.
//
// # Safety
// `t` must be a live handle, `word` NUL-terminated, `out` writable.
enum SigvarStatus sigvar_tensor_coefficient(const struct SigvarTensor *t,
                                            const char *word,
                                            char **out);

// Applies one of the Hoffman maps.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SigvarStatus sigvar_tensor_hoffman(const struct SigvarTensor *t,
                                        enum SigvarHoffmanMap map,
                                        struct SigvarTensor **out);

// Truncated exponential; the constant term must be 0.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SigvarStatus sigvar_tensor_exp(const struct SigvarTensor *t, struct SigvarTensor **out);

// Truncated logarithm; the constant term must be 1.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SigvarStatus sigvar_tensor_log(const struct SigvarTensor *t, struct SigvarTensor **out);

// Truncated concatenation product `a · b`.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum SigvarStatus sigvar_tensor_concat(const struct SigvarTensor *a,
                                       const struct SigvarTensor *b,
                                       struct SigvarTensor **out);

// Runs a membership check. Returns `Ok` if it holds and `CheckFailed`
// otherwise; `relations` (if not null) receives the number of relations
// evaluated.
//
// # Safety
// `t` must be a live handle; `relations` must be null or writable.
enum SigvarStatus sigvar_tensor_check(const struct SigvarTensor *t,
                                      enum SigvarCheck check,
                                      uintptr_t *relations);

// Number of Lyndon words of height `h` over `d` variables.
//
// # Safety
// `out` must be writable.
enum SigvarStatus sigvar_lambda(uintptr_t d, uintptr_t h, uint64_t *out);

// Rank over F_p of the Jacobian of the signature map at a seeded random
// integer series of length `n`. Pass `modulus` 0 for the default prime.
//
// # Safety
// `out` must be writable.
enum SigvarStatus sigvar_jacobian_rank(uintptr_t d,
                                       uintptr_t h,
                                       uintptr_t n,
                                       uint64_t seed,
                                       uint64_t modulus,
                                       uintptr_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGVAR_H */
