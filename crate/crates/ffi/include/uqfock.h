#ifndef UQFOCK_H
#define UQFOCK_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum UqStatus {
  UQ_STATUS_OK = 0,
  UQ_STATUS_NULL_POINTER = 1,
  UQ_STATUS_INVALID_UTF8 = 2,
  UQ_STATUS_INVALID_PARAMS = 3,
  UQ_STATUS_INDEX_RANGE = 4,
  UQ_STATUS_BAD_Q = 5,
  UQ_STATUS_SYNTAX = 6,
  UQ_STATUS_ARITY = 7,
  UQ_STATUS_GRADE_UNDEFINED = 8,
  UQ_STATUS_NON_DIVISIBLE = 9,
  UQ_STATUS_UNRESOLVED_ATOM = 10,
  UQ_STATUS_NEGATIVE_POWER = 11,
  UQ_STATUS_OVERFLOW = 12,
  UQ_STATUS_OTHER = 13,
  UQ_STATUS_PANIC = 14,
} UqStatus;

/**
 * A Fock space together with its exact generator matrices.
 */
typedef struct UqFock UqFock;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the Fock space `W_p` for `U_q[sl(n+1|m)]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum UqStatus uq_fock_new(size_t n, size_t m, size_t p, struct UqFock **out);

/**
 * # Safety
 * `h` must come from [`uq_fock_new`] and not be used afterwards. Null is ignored.
 */
void uq_fock_free(struct UqFock *h);

/**
 * # Safety
 * `h` must be a live handle, `out` valid for writes.
 */
enum UqStatus uq_fock_dim(const struct UqFock *h, size_t *out);

/**
 * Closed-form dimension, without enumerating the basis.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum UqStatus uq_dim_formula(size_t n, size_t m, size_t p, uint64_t *out);

/**
 * `{"params": ..., "states": [[r_1, ...], ...]}`
 *
 * # Safety
 * `h` must be a live handle, `out` valid for writes.
 */
enum UqStatus uq_fock_basis_json(const struct UqFock *h, char **out);

/**
 * Exact matrix of an expression such as `"Ap(1)"` or `"scomm(Am(1), Ap(1))"`.
 *
 * # Safety
 * `h` must be a live handle, `expr` a NUL-terminated string, `out` valid for writes.
 */
enum UqStatus uq_fock_matrix_json(const struct UqFock *h, const char *expr, char **out);

/**
 * Exact verification report; `failed` receives the number of failing relations.
 *
 * # Safety
 * `h` must be a live handle; `out` and `failed` valid for writes.
 */
enum UqStatus uq_fock_verify_json(const struct UqFock *h, char **out, size_t *failed);

/**
 * Verification with the normalized numeric matrices at `q0`.
 *
 * # Safety
 * `h` must be a live handle; `out` and `failed` valid for writes.
 */
enum UqStatus uq_fock_verify_numeric_json(const struct UqFock *h,
                                          double q0,
                                          double tol,
                                          char **out,
                                          size_t *failed);

/**
 * Checks an identity `lhs == rhs` exactly.
 *
 * # Safety
 * `h` must be a live handle, `identity` a NUL-terminated string, `passed` valid for writes.
 */
enum UqStatus uq_fock_check_identity(const struct UqFock *h, const char *identity, bool *passed);

/**
 * Message of the last failure on this thread, or null. Owned by the library.
 */
const char *uq_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void uq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UQFOCK_H */
