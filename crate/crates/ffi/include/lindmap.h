#ifndef LINDMAP_H
#define LINDMAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result code of every fallible call.
typedef enum LmStatus {
  LM_STATUS_OK = 0,
  LM_STATUS_NULL_POINTER = 1,
  LM_STATUS_INVALID_ARGUMENT = 2,
  LM_STATUS_DIMENSION_MISMATCH = 3,
  LM_STATUS_NOT_HERMITIAN = 4,
  LM_STATUS_NO_CONVERGENCE = 5,
  LM_STATUS_NOT_A_DENSITY_MATRIX = 6,
  LM_STATUS_OUT_OF_RANGE = 7,
  LM_STATUS_UNKNOWN_FAMILY = 8,
  LM_STATUS_NO_SIGN_CHANGE = 9,
  LM_STATUS_INTERNAL = 10,
} LmStatus;

// Opaque square complex matrix.
typedef struct LmMatrix LmMatrix;

// Opaque linear map on d×d matrices.
typedef struct LmSuperOp LmSuperOp;

// Outcome of [`lm_detect_gme`].
typedef struct LmDetectionReport {
  double gamma;
  double c;
  double min_eigenvalue;
  double witness_value;
  double n_gme;
  bool detected;
} LmDetectionReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *lm_last_error(void);

// Builds a `dim`×`dim` matrix from row-major arrays. `im` may be null for a
// real matrix.
//
// # Safety
// `re` (and `im` when non-null) must point to `dim*dim` readable doubles.
enum LmStatus lm_matrix_new(size_t dim, const double *re, const double *im, struct LmMatrix **out);

// # Safety
// `m` must be null or a handle from this library that has not been freed.
void lm_matrix_free(struct LmMatrix *m);

// Dimension of `m`, 0 for null.
//
// # Safety
// `m` must be null or a live handle.
size_t lm_matrix_dim(const struct LmMatrix *m);

// # Safety
// `m` must be a live handle; `re`/`im` must be writable.
enum LmStatus lm_matrix_get(const struct LmMatrix *m,
                            size_t row,
                            size_t col,
                            double *re,
                            double *im);

// Smallest eigenvalue of a Hermitian matrix.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum LmStatus lm_matrix_min_eigenvalue(const struct LmMatrix *m, double *out);

// Trace norm (sum of absolute eigenvalues) of a Hermitian matrix.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum LmStatus lm_matrix_trace_norm(const struct LmMatrix *m, double *out);

// Builds a named family member: `lambda-gamma`, `phi-alpha`, `phi2-alpha`,
// `phiC-beta`, `choi-F` or `transposition` (parameter = dimension).
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum LmStatus lm_superop_family(const char *name, double param, struct LmSuperOp **out);

// # Safety
// `s` must be null or a live handle.
void lm_superop_free(struct LmSuperOp *s);

// Dimension d of the matrices the map acts on, 0 for null.
//
// # Safety
// `s` must be null or a live handle.
size_t lm_superop_dim(const struct LmSuperOp *s);

// `out = S(x)` as a new matrix handle.
//
// # Safety
// `s` and `x` must be live handles; `out` must be writable.
enum LmStatus lm_superop_apply(const struct LmSuperOp *s,
                               const struct LmMatrix *x,
                               struct LmMatrix **out);

// Choi matrix with the trace-one maximally entangled state.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum LmStatus lm_superop_choi(const struct LmSuperOp *s, struct LmMatrix **out);

// Complete positivity: Choi matrix PSD within `tol`.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum LmStatus lm_superop_is_cp(const struct LmSuperOp *s, double tol, bool *out);

// # Safety
// `out` must be writable.
enum LmStatus lm_state_w(struct LmMatrix **out);

// # Safety
// `out` must be writable.
enum LmStatus lm_state_ghz(struct LmMatrix **out);

// p·|W⟩⟨W| + (1−p)·𝕀/8
//
// # Safety
// `out` must be writable.
enum LmStatus lm_state_noisy_w(double p, struct LmMatrix **out);

// Applies the lifted Λ_γ (trace constant 1) to a three-qubit density
// matrix. The witness value and 𝒩_GME (with 𝒦 = 1) are always filled in;
// the verdict follows the lifted spectrum.
//
// # Safety
// `rho` must be a live handle; `out` must be writable.
enum LmStatus lm_detect_gme(const struct LmMatrix *rho,
                            double gamma,
                            bool rotated,
                            struct LmDetectionReport *out);

// 𝒩_GME of a three-qubit density matrix with normalization `k`.
//
// # Safety
// `rho` must be a live handle; `out` must be writable.
enum LmStatus lm_n_gme(const struct LmMatrix *rho, double k, double *out);

// tr(𝒲ρ) for the witness built at γ = ½.
//
// # Safety
// `rho` must be a live handle; `out` must be writable.
enum LmStatus lm_witness_value(const struct LmMatrix *rho, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINDMAP_H */
