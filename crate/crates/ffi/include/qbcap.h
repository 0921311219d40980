#ifndef QBCAP_H
#define QBCAP_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from qbcap-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Local noise channel applied to both qubits.
typedef enum QbNoise {
  QB_NOISE_NONE = 0,
  QB_NOISE_PHASE_FLIP = 1,
  QB_NOISE_BIT_FLIP = 2,
  QB_NOISE_DEPOLARIZING = 3,
} QbNoise;

// Region pair handed to the two observers.
typedef enum QbRegion {
  QB_REGION_A1B1 = 0,
  QB_REGION_A1B2 = 1,
  QB_REGION_A2B1 = 2,
  QB_REGION_A2B2 = 3,
} QbRegion;

// Call outcome.
typedef enum QbStatus {
  QB_STATUS_OK = 0,
  // A parameter is outside its domain.
  QB_STATUS_INVALID_ARGUMENT = 1,
  // The eigensolver failed to converge.
  QB_STATUS_NO_CONVERGENCE = 2,
  // A required pointer was null.
  QB_STATUS_NULL_POINTER = 3,
} QbStatus;

// Opaque verification report handle.
typedef struct QbVerifyReport QbVerifyReport;

// One evaluated parameter point.
typedef struct QbCapacityResult {
  // Sorted eigenvalues of the reduced state.
  double eigenvalues[4];
  // Capacity from the matrix pipeline.
  double capacity_pipeline;
  // Capacity from the closed forms.
  double capacity_analytic;
  // |pipeline - analytic|.
  double residual;
  // True when either mixing angle exceeds pi/4, which no Hawking
  // temperature produces.
  bool beyond_physical_range;
} QbCapacityResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Evaluates one parameter point through both routes.
//
// # Safety
// `out` must be null or point to writable memory for one
// `QbCapacityResult`.
enum QbStatus qbcap_capacity_eval(enum QbRegion region,
                                  enum QbNoise noise,
                                  double p,
                                  double eta_a,
                                  double eta_b,
                                  double k,
                                  struct QbCapacityResult *out);

// Closed-form capacity only, without running the matrix pipeline.
//
// # Safety
// `out` must be null or point to a writable `double`.
enum QbStatus qbcap_analytic_capacity(enum QbRegion region,
                                      enum QbNoise noise,
                                      double p,
                                      double eta_a,
                                      double eta_b,
                                      double k,
                                      double *out);

// Runs the closed-form vs pipeline verification at the given grid density
// and hands back an opaque report. Free it with `qbcap_verify_free`.
//
// # Safety
// `out` must be null or point to writable pointer storage.
enum QbStatus qbcap_verify_run(size_t density, struct QbVerifyReport **out);

// Whether every residual stayed under the acceptance threshold.
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`.
bool qbcap_verify_passed(const struct QbVerifyReport *report);

// Largest |analytic - pipeline| eigenvalue residual (NaN for null input).
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`.
double qbcap_verify_max_eigenvalue_residual(const struct QbVerifyReport *report);

// Largest |analytic - pipeline| capacity residual (NaN for null input).
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`.
double qbcap_verify_max_capacity_residual(const struct QbVerifyReport *report);

// Largest Bloch-vs-Kraus state entry residual (NaN for null input).
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`.
double qbcap_verify_max_state_residual(const struct QbVerifyReport *report);

// Number of grid points where the labeled closed-form order is unsorted.
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`.
uint64_t qbcap_verify_ordering_violations(const struct QbVerifyReport *report);

// Number of grid points where the labeled top eigenvalue pair is wrong.
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`.
uint64_t qbcap_verify_partition_violations(const struct QbVerifyReport *report);

// Borrowed pointer to the human-readable report text, valid until the
// report is freed. Returns null for null input.
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`.
const char *qbcap_verify_render_text(const struct QbVerifyReport *report);

// Releases a report handle. Null is a no-op.
//
// # Safety
// `report` must be null or a pointer from `qbcap_verify_run`, not yet
// freed.
void qbcap_verify_free(struct QbVerifyReport *report);

// Library version as a static NUL-terminated string.
const char *qbcap_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QBCAP_H */
