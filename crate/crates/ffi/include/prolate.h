#ifndef PROLATE_H
#define PROLATE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ProlateStatus {
  PROLATE_STATUS_OK = 0,
  PROLATE_STATUS_NULL_POINTER = 1,
  PROLATE_STATUS_INVALID_ARGUMENT = 2,
  PROLATE_STATUS_DOMAIN = 3,
  PROLATE_STATUS_NO_CONVERGENCE = 4,
  // Eigen-solver, integrator or root-count failure.
  PROLATE_STATUS_NUMERICAL = 5,
  PROLATE_STATUS_IO = 6,
  PROLATE_STATUS_UNKNOWN_ID = 7,
  // Caller buffer too short; the required length was written back.
  PROLATE_STATUS_BUFFER_TOO_SMALL = 8,
  PROLATE_STATUS_PANIC = 9,
} ProlateStatus;

// Opaque spectrum handle.
typedef struct ProlateSpectrumHandle ProlateSpectrumHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *prolate_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *prolate_version(void);

// Builds `χ_0..χ_{n_max}` and `ψ_0..ψ_{n_max}` for band limit `c`.
// Pass `tol <= 0` for the default tolerance.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum ProlateStatus prolate_spectrum_new(double c,
                                        size_t n_max,
                                        double tol,
                                        struct ProlateSpectrumHandle **out);

// Releases a handle from [`prolate_spectrum_new`]. NULL is ignored.
//
// # Safety
// `h` must come from [`prolate_spectrum_new`] and not be freed twice.
void prolate_spectrum_free(struct ProlateSpectrumHandle *h);

// # Safety
// `h` must be a live handle; `out` must be writable.
enum ProlateStatus prolate_spectrum_n_max(const struct ProlateSpectrumHandle *h, size_t *out);

// # Safety
// `h` must be a live handle; `out` must be writable.
enum ProlateStatus prolate_spectrum_chi(const struct ProlateSpectrumHandle *h,
                                        size_t n,
                                        double *out);

// `ψ_n(t)` and `ψ_n'(t)` for `-1 <= t <= 1`. Either output may be NULL.
//
// # Safety
// `h` must be a live handle; non-NULL outputs must be writable.
enum ProlateStatus prolate_psi(const struct ProlateSpectrumHandle *h,
                               size_t n,
                               double t,
                               double *value,
                               double *derivative);

// `|λ_n|` and `μ_n = (c/2π)|λ_n|²`. Either output may be NULL.
//
// # Safety
// `h` must be a live handle; non-NULL outputs must be writable.
enum ProlateStatus prolate_lambda(const struct ProlateSpectrumHandle *h,
                                  size_t n,
                                  double *lambda_abs,
                                  double *mu);

// Writes the `n` roots of `ψ_n` in increasing order into `buf`. `len`
// receives `n`; when `cap < n` nothing else is written and
// `PROLATE_STATUS_BUFFER_TOO_SMALL` is returned. `above` (may be NULL)
// receives 1 when `χ_n > c²` and 0 otherwise.
//
// # Safety
// `h` must be a live handle; `buf` must hold `cap` doubles; `len` must be
// writable.
enum ProlateStatus prolate_roots(const struct ProlateSpectrumHandle *h,
                                 size_t n,
                                 double *buf,
                                 size_t cap,
                                 size_t *len,
                                 int32_t *above);

// Runs every bound for `ψ_n` (`n >= 2`) and reports how many claims were
// checked and how many failed.
//
// # Safety
// `h` must be a live handle; `checked` and `failed` must be writable.
enum ProlateStatus prolate_check_bounds(const struct ProlateSpectrumHandle *h,
                                        size_t n,
                                        size_t *checked,
                                        size_t *failed);

// Incomplete elliptic integral of the first kind `F(y, k)`.
//
// # Safety
// `out` must be writable.
enum ProlateStatus prolate_ellint_f(double y, double k, double *out);

// Incomplete elliptic integral of the second kind `E(y, k)`.
//
// # Safety
// `out` must be writable.
enum ProlateStatus prolate_ellint_e(double y, double k, double *out);

// Recomputes a reference table or figure (`"77a"`, `"171b"`, ...) as CSV.
// `heavy` nonzero allows the `c = 10000` table. The string in `out` must
// be released with [`prolate_string_free`].
//
// # Safety
// `id` must be a NUL-terminated string; `out` must be writable.
enum ProlateStatus prolate_artifact_csv(const char *id, int32_t heavy, char **out);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void prolate_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROLATE_H */
