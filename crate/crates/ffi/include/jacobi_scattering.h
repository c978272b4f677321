#ifndef JACOBI_SCATTERING_H
#define JACOBI_SCATTERING_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum JscStatus {
  JSC_STATUS_OK = 0,
  JSC_STATUS_NULL_POINTER = 1,
  JSC_STATUS_INVALID_UTF8 = 2,
  JSC_STATUS_JSON = 3,
  JSC_STATUS_INADMISSIBLE = 4,
  JSC_STATUS_DOMAIN = 5,
  JSC_STATUS_NUMERICAL = 6,
  JSC_STATUS_UNSUPPORTED = 7,
  JSC_STATUS_PANIC = 8,
} JscStatus;

/**
 * Scattering data `{γ₁, γ₂; Z; μ; s}`.
 */
typedef struct JscData JscData;

/**
 * Normalized or unnormalized spectral measure.
 */
typedef struct JscMeasure JscMeasure;

/**
 * Jacobi parameters with a free tail.
 */
typedef struct JscParams JscParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Free with `jsc_string_free`.
 */
char *jsc_last_error(void);

/**
 * Library version as a static string.
 */
const char *jsc_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void jsc_string_free(char *s);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum JscStatus jsc_measure_from_json(const char *json, struct JscMeasure **out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_measure_to_json(const struct JscMeasure *m, char **out);

/**
 * Total mass `∫ f dx + Σ σ_k`; NaN for a NULL handle.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
double jsc_measure_total_mass(const struct JscMeasure *m);

/**
 * # Safety
 * `m` must be NULL or a handle from this library, freed once.
 */
void jsc_measure_free(struct JscMeasure *m);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum JscStatus jsc_data_from_json(const char *json, struct JscData **out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_data_to_json(const struct JscData *d, char **out);

/**
 * Checks admissibility without running the inverse map.
 *
 * # Safety
 * `d` must be a live handle.
 */
enum JscStatus jsc_data_validate(const struct JscData *d);

/**
 * # Safety
 * `d` must be NULL or a handle from this library, freed once.
 */
void jsc_data_free(struct JscData *d);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum JscStatus jsc_params_from_json(const char *json, struct JscParams **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_params_to_json(const struct JscParams *p, char **out);

/**
 * `a_n` for `n ≥ 1` (`a_0 = 1`).
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_params_a(const struct JscParams *p, size_t n, double *out);

/**
 * `b_n` for `n ≥ 1`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_params_b(const struct JscParams *p, size_t n, double *out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, freed once.
 */
void jsc_params_free(struct JscParams *p);

/**
 * Scattering data of a normalized measure.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_forward(const struct JscMeasure *m, struct JscData **out);

/**
 * Normalized spectral measure of admissible scattering data.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_inverse(const struct JscData *d, struct JscMeasure **out);

/**
 * Jacobi parameters of a measure with `γ = (0, 0)`, materialized up to `n_max`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum JscStatus jsc_reconstruct(const struct JscMeasure *m, size_t n_max, struct JscParams **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JACOBI_SCATTERING_H */
