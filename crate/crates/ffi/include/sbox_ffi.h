#ifndef SBOX_FFI_H
#define SBOX_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Degree reported for the constant-zero component.
 */
#define SBOX_NEG_INFINITY_DEGREE -1

/*
 Result code of every fallible call.
 */
typedef enum SboxStatus {
  SBOX_STATUS_OK = 0,
  SBOX_STATUS_NULL_POINTER = 1,
  SBOX_STATUS_INVALID_UTF8 = 2,
  SBOX_STATUS_PARSE_ERROR = 3,
  SBOX_STATUS_INVALID_ARGUMENT = 4,
  SBOX_STATUS_NOT_BIJECTIVE = 5,
  SBOX_STATUS_NOT_NORMALIZED = 6,
  SBOX_STATUS_WRONG_DIMENSION = 7,
  SBOX_STATUS_BUFFER_TOO_SMALL = 8,
  SBOX_STATUS_PANIC = 9,
} SboxStatus;

/*
 Opaque S-box owned by the library.
 */
typedef struct SboxHandle SboxHandle;

/*
 Totals from `sbox_enumerate_strong`.
 */
typedef struct SboxEnumerationCounts {
  uint64_t strong;
  uint64_t very_strong;
  uint64_t nodes_visited;
  uint64_t leaves_visited;
} SboxEnumerationCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a decimal CSV table or a 16-digit hex string into a new handle.

 # Safety
 `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SboxStatus sbox_parse(const char *text, struct SboxHandle **out);

/*
 Builds a handle from `len` table entries; `len` must be `2^m` with `2 <= m <= 8`.

 # Safety
 `table` must point to `len` readable bytes and `out` must be writable.
 */
enum SboxStatus sbox_from_table(const uint8_t *table, size_t len, struct SboxHandle **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `h` must come from this library and must not be used afterwards.
 */
void sbox_free(struct SboxHandle *h);

/*
 Dimension `m`, or 0 for a null handle.

 # Safety
 `h` must be null or a live handle.
 */
uint32_t sbox_dimension(const struct SboxHandle *h);

/*
 Copies the `2^m` table entries into `out`.

 # Safety
 `h` must be a live handle and `out` must have room for `len` bytes.
 */
enum SboxStatus sbox_table(const struct SboxHandle *h, uint8_t *out, size_t len);

/*
 New handle for `x -> f(x) ^ f(0)`.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_normalize(const struct SboxHandle *h, struct SboxHandle **out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_is_bijective(const struct SboxHandle *h, bool *out);

/*
 Smallest `delta` for which the S-box is `delta`-differentially uniform.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_differential_uniformity(const struct SboxHandle *h, uint32_t *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_derivative_image_size(const struct SboxHandle *h, size_t u, size_t *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_is_weakly_delta_uniform(const struct SboxHandle *h, uint32_t delta, bool *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_is_weakly_apn(const struct SboxHandle *h, bool *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_diff1(const struct SboxHandle *h, uint32_t *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_lin(const struct SboxHandle *h, uint32_t *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_lin1(const struct SboxHandle *h, uint32_t *out);

/*
 Degree of the component `<f, v>`, `v != 0`.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_component_degree(const struct SboxHandle *h, size_t v, int32_t *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_algebraic_degree(const struct SboxHandle *h, int32_t *out);

/*
 `n_degree`: number of nonzero masks whose component has this degree.
 Pass `SBOX_NEG_INFINITY_DEGREE` to count constant-zero components.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_degree_count(const struct SboxHandle *h, int32_t degree, uint32_t *out);

/*
 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_n_hat(const struct SboxHandle *h, uint32_t *out);

/*
 Needs a normalized permutation.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_is_strongly_anti_invariant(const struct SboxHandle *h,
                                                uint32_t level,
                                                bool *out);

/*
 Needs a 4-bit permutation.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_is_optimal(const struct SboxHandle *h, bool *out);

/*
 Needs a normalized 4-bit permutation.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_is_strong(const struct SboxHandle *h, bool *out);

/*
 Needs a normalized 4-bit permutation.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum SboxStatus sbox_is_very_strong(const struct SboxHandle *h, bool *out);

/*
 Full analysis report as a JSON string, or null on failure. Release it with
 `sbox_string_free`.

 # Safety
 `h` must be null or a live handle.
 */
char *sbox_analyze_json(const struct SboxHandle *h);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void sbox_string_free(char *s);

/*
 Counts strong and very strong normalized 4-bit S-boxes in one shard.
 `threads = 0` uses every logical processor.

 # Safety
 `out` must be writable.
 */
enum SboxStatus sbox_enumerate_strong(uint32_t shards,
                                      uint32_t shard_id,
                                      uint32_t threads,
                                      struct SboxEnumerationCounts *out);

/*
 Message for the last failure on this thread, or null. Valid until the next
 failing call on the same thread.
 */
const char *sbox_last_error_message(void);

/*
 Static description of a status code.
 */
const char *sbox_status_message(enum SboxStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SBOX_FFI_H */
