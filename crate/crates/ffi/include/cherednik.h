#ifndef CHEREDNIK_H
#define CHEREDNIK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChkStatus {
  CHK_STATUS_OK = 0,
  CHK_STATUS_NULL_POINTER = 1,
  CHK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed or inconsistent input; the CLI exits with 1 for these.
   */
  CHK_STATUS_INPUT_ERROR = 3,
  /**
   * A computation hit a violated invariant.
   */
  CHK_STATUS_COMPUTATION_ERROR = 4,
  CHK_STATUS_ENGINE_DISAGREEMENT = 5,
  CHK_STATUS_PANIC = 6,
} ChkStatus;

/**
 * A parsed context file, with its Γ when the file names one.
 */
typedef struct ChkContext ChkContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON context file. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ChkStatus chk_context_parse(const char *json, struct ChkContext **out);

/**
 * # Safety
 * `ctx` must come from [`chk_context_parse`] and not be used afterwards.
 */
void chk_context_free(struct ChkContext *ctx);

/**
 * # Safety
 * `ctx` must be a live handle and `out` a valid pointer.
 */
enum ChkStatus chk_gamma_size(const struct ChkContext *ctx, size_t *out);

/**
 * The element of Γ at `index`, in the library's fixed order.
 *
 * # Safety
 * `ctx` must be a live handle and `out` a valid pointer.
 */
enum ChkStatus chk_gamma_element(const struct ChkContext *ctx, size_t index, char **out);

/**
 * d_{λμ}(t) computed by both engines, which must agree.
 *
 * # Safety
 * `ctx` must be a live handle, `lambda` and `mu` NUL-terminated strings and
 * `out` a valid pointer.
 */
enum ChkStatus chk_decomp_number(const struct ChkContext *ctx,
                                 const char *lambda,
                                 const char *mu,
                                 char **out);

/**
 * The full matrix over Γ as JSON: `{"labels": [...], "matrix": [[...]]}`.
 *
 * # Safety
 * `ctx` must be a live handle and `out` a valid pointer.
 */
enum ChkStatus chk_decomp_matrix_json(const struct ChkContext *ctx, char **out);

/**
 * Dim Δ_μ(λ) over Γ.
 *
 * # Safety
 * As for [`chk_decomp_number`].
 */
enum ChkStatus chk_delta_char(const struct ChkContext *ctx,
                              const char *lambda,
                              const char *mu,
                              char **out);

/**
 * The χ-sequence of γ, comma separated.
 *
 * # Safety
 * `ctx` must be a live handle and `out` a valid pointer.
 */
enum ChkStatus chk_chi_sequence(const struct ChkContext *ctx, char **out);

/**
 * Writes 1 if the two χ-sequences are equivalent, 0 if not and -1 if the
 * search gave up within `depth`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum ChkStatus chk_chi_compare(const struct ChkContext *a,
                               const struct ChkContext *b,
                               size_t depth,
                               int32_t *out);

/**
 * The message of the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *chk_last_error(void);

/**
 * # Safety
 * `s` must be a string returned by this library, or NULL.
 */
void chk_string_free(char *s);

const char *chk_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEREDNIK_H */
