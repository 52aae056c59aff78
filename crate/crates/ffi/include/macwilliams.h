#ifndef MACWILLIAMS_H
#define MACWILLIAMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. `Ok` through `CapExceeded` match the command-line exit codes.
 */
typedef enum mw_status {
  MW_STATUS_OK = 0,
  MW_STATUS_IDENTITY_FAILED = 1,
  MW_STATUS_INVALID_INPUT = 2,
  MW_STATUS_CAP_EXCEEDED = 3,
  MW_STATUS_NULL_POINTER = 4,
  MW_STATUS_UTF8 = 5,
  MW_STATUS_PANIC = 6,
} mw_status;

/**
 * Opaque linear code handle.
 */
typedef struct mw_code mw_code;

/**
 * Opaque enumerator polynomial handle.
 */
typedef struct mw_poly mw_poly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if there was none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *mw_last_error_message(void);

/**
 * Built-in code by name (`C1`..`C5`, `D1`, `D2`).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum mw_status mw_code_named(const char *name, struct mw_code **out);

/**
 * Code from the JSON code-file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum mw_status mw_code_from_json(const char *json, struct mw_code **out);

/**
 * Code in the JSON code-file format. Free the string with [`mw_string_free`].
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum mw_status mw_code_to_json(const struct mw_code *code, char **out);

/**
 * Dual code.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum mw_status mw_code_dual(const struct mw_code *code, struct mw_code **out);

/**
 * Number of codewords, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uint64_t mw_code_size(const struct mw_code *code);

/**
 * Code length `N`, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t mw_code_length(const struct mw_code *code);

/**
 * # Safety
 * `code` must be null or a handle not yet freed.
 */
void mw_code_free(struct mw_code *code);

/**
 * Enumerator of kind `hamming`, `complete`, `support` or `exact` for the tuple
 * `codes[0..count]`.
 *
 * # Safety
 * `kind` must be a NUL-terminated string, `codes` must point to `count` live
 * handles and `out` must be a valid pointer.
 */
enum mw_status mw_enumerate(const char *kind,
                            const struct mw_code *const *codes,
                            size_t count,
                            struct mw_poly **out);

/**
 * Enumerator of the dual tuple, by brute force or through the transform.
 *
 * # Safety
 * As for [`mw_enumerate`].
 */
enum mw_status mw_enumerate_dual(const char *kind,
                                 const struct mw_code *const *codes,
                                 size_t count,
                                 bool via_transform,
                                 struct mw_poly **out);

/**
 * Canonical text form. Free the string with [`mw_string_free`].
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum mw_status mw_poly_render(const struct mw_poly *poly, char **out);

/**
 * Writes whether `a` and `b` are the same polynomial.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum mw_status mw_poly_equal(const struct mw_poly *a, const struct mw_poly *b, bool *out);

/**
 * # Safety
 * `poly` must be null or a handle not yet freed.
 */
void mw_poly_free(struct mw_poly *poly);

/**
 * Checks the identity named `theorem` (`macwilliams`, `wan`, `cwrcs2`, `britz`,
 * `exact`, `hamw`, `klove`, `dps`) on `codes[0..count]`. Returns `Ok` when it
 * holds and `IdentityFailed` when it does not. When `report` is not null it
 * receives the JSON report either way.
 *
 * # Safety
 * As for [`mw_enumerate`]; `report` may be null.
 */
enum mw_status mw_verify(const char *theorem,
                         const struct mw_code *const *codes,
                         size_t count,
                         char **report);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void mw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MACWILLIAMS_H */
