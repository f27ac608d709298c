#ifndef TQF_H
#define TQF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Outcome of an FFI call. `TQF_STATUS_OK` is zero.
 */
typedef enum TqfStatus {
  TQF_STATUS_OK = 0,
  TQF_STATUS_NULL_POINTER = 1,
  TQF_STATUS_INVALID_ARGUMENT = 2,
  TQF_STATUS_NOT_POSITIVE_DEFINITE = 3,
  TQF_STATUS_BUDGET_EXCEEDED = 4,
  TQF_STATUS_OVERFLOW = 5,
  TQF_STATUS_NOT_PRIME = 6,
  TQF_STATUS_UNSOLVABLE = 7,
  TQF_STATUS_BUFFER_TOO_SMALL = 8,
  TQF_STATUS_PANIC = 9,
} TqfStatus;

/**
 * Opaque handle to a positive-definite integral quadratic form.
 */
typedef struct TqfForm TqfForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a form from an `n×n` row-major Gram matrix.
 *
 * # Safety
 * `gram` must point to `n·n` readable values and `out` must be writable.
 */
enum TqfStatus tqf_form_new(const int64_t *gram, size_t n, struct TqfForm **out);

/**
 * Creates the diagonal form `⟨d_1, …, d_n⟩`.
 *
 * # Safety
 * `entries` must point to `n` readable values and `out` must be writable.
 */
enum TqfStatus tqf_form_diagonal(const int64_t *entries, size_t n, struct TqfForm **out);

/**
 * Releases a form. Passing null is a no-op.
 *
 * # Safety
 * `f` must come from this library and must not be used afterwards.
 */
void tqf_form_free(struct TqfForm *f);

/**
 * Dimension of the form, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t tqf_form_dim(const struct TqfForm *f);

/**
 * Copies the Gram matrix into `out` (row-major, `len ≥ n·n`).
 *
 * # Safety
 * `f` must be a live handle and `out` must have room for `len` values.
 */
enum TqfStatus tqf_form_gram(const struct TqfForm *f, int64_t *out, size_t len);

/**
 * `Q(x) = xᵀMx` for `x` of length `n`.
 *
 * # Safety
 * `f` must be a live handle, `x` must hold `n` values and `out` be writable.
 */
enum TqfStatus tqf_form_evaluate(const struct TqfForm *f, const int64_t *x, size_t n, int64_t *out);

/**
 * Number of integer vectors with `Q(x) = k`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum TqfStatus tqf_rep_count(const struct TqfForm *f, int64_t k, uint64_t *out);

/**
 * Writes `r(0), …, r(upper)` into `out`, which must hold `upper + 1` values.
 *
 * # Safety
 * `f` must be a live handle and `out` must have room for `len` values.
 */
enum TqfStatus tqf_theta_series(const struct TqfForm *f, uint64_t upper, uint64_t *out, size_t len);

/**
 * Order of the integral automorphism group.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum TqfStatus tqf_aut_order(const struct TqfForm *f, uint64_t *out);

/**
 * Sets `*isometric`; when true and `witness` is non-null, writes `T`
 * (row-major `n·n`) with `Tᵀ M_f T = M_g`.
 *
 * # Safety
 * `f`, `g` must be live handles; `witness` is null or has room for `n·n` values.
 */
enum TqfStatus tqf_is_isometric(const struct TqfForm *f,
                                const struct TqfForm *g,
                                bool *isometric,
                                int64_t *witness);

/**
 * Number of `x` with `Q(x + z) − Q(z) = value`, i.e. `xᵀMx + 2zᵀMx = value`.
 *
 * # Safety
 * `f` must be a live handle, `shift` must hold `n` values and `out` be writable.
 */
enum TqfStatus tqf_shifted_rep_count(const struct TqfForm *f,
                                     const int64_t *shift,
                                     size_t n,
                                     int64_t value,
                                     uint64_t *out);

/**
 * Number of `x` with `Q(x) = a` and `Bx ≡ w (mod s)`. A null `b` means the identity.
 *
 * # Safety
 * `f` must be a live handle; `b` is null or holds `n·n` values; `w`, `s`
 * hold `n` values; `out` is writable.
 */
enum TqfStatus tqf_congruence_rep_count(const struct TqfForm *f,
                                        int64_t a,
                                        const int64_t *b,
                                        const int64_t *w,
                                        const int64_t *s,
                                        size_t n,
                                        uint64_t *out);

/**
 * Closed formula for `r(k, L_i)`, `i ∈ 1..=4`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TqfStatus tqf_bell_closed_form(uint8_t i, int64_t k, uint64_t *out);

/**
 * One step of `λ_p`: writes a new handle to `*out` and, when non-null, the
 * divisor used to make the restricted form primitive.
 *
 * # Safety
 * `f` must be a live handle; `out` writable; `divisor` null or writable.
 */
enum TqfStatus tqf_watson_transform(const struct TqfForm *f,
                                    uint64_t p,
                                    struct TqfForm **out,
                                    int64_t *divisor);

/**
 * Sets the enumeration node budget for this process.
 */
void tqf_set_budget(uint64_t nodes);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full length excluding the NUL, or 0 when
 * there is no error. `buf` may be null to query the length.
 *
 * # Safety
 * `buf` must be null or have room for `len` bytes.
 */
size_t tqf_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tqf_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TQF_H */
