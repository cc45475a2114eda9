#ifndef BLOIC_H
#define BLOIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes; `BLOIC_STATUS_OK` is zero.
typedef enum BloicStatus {
  BLOIC_STATUS_OK = 0,
  BLOIC_STATUS_NULL_POINTER = 1,
  BLOIC_STATUS_OUT_OF_RANGE = 2,
  BLOIC_STATUS_INVALID_REGIME = 3,
  BLOIC_STATUS_INVALID_PARAMETER = 4,
  BLOIC_STATUS_DIVERGENT_METRIC = 5,
  BLOIC_STATUS_UNKNOWN_NAME = 6,
  BLOIC_STATUS_INVALID_UTF8 = 7,
  BLOIC_STATUS_PANIC = 8,
} BloicStatus;

typedef enum BloicPulseFamily {
  BLOIC_PULSE_FAMILY_SINC = 0,
  BLOIC_PULSE_FAMILY_S2 = 1,
  BLOIC_PULSE_FAMILY_SPECTRAL_COSINE = 2,
  BLOIC_PULSE_FAMILY_PARAMETRIC_LINEAR = 3,
} BloicPulseFamily;

// Opaque curve handle: a bound on an SNR grid.
typedef struct BloicCurve BloicCurve;

// Opaque pulse handle.
typedef struct BloicPulse BloicPulse;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message into `buf` (always
// NUL-terminated when `len > 0`) and returns the full message length.
// Returns 0 when no error has been recorded.
//
// # Safety
// `buf` must be valid for `len` bytes or null.
size_t bloic_last_error_message(char *buf, size_t len);

// Creates a pulse; `beta` is read only for the PL family.
//
// # Safety
// `out` must be a valid pointer.
enum BloicStatus bloic_pulse_new(enum BloicPulseFamily family,
                                 double beta,
                                 double bandwidth,
                                 struct BloicPulse **out);

// # Safety
// `pulse` must come from [`bloic_pulse_new`] and not be used afterwards.
void bloic_pulse_free(struct BloicPulse *pulse);

// Pulse amplitude at `t` seconds; NaN for a null handle.
//
// # Safety
// `pulse` must be a live handle or null.
double bloic_pulse_eval_time(const struct BloicPulse *pulse, double t);

// Spectrum at `f` Hz; NaN for a null handle.
//
// # Safety
// `pulse` must be a live handle or null.
double bloic_pulse_eval_freq(const struct BloicPulse *pulse, double f);

// Nyquist spacing `1/(2W)`, or `(1+β)/(2W)` for PL; NaN for a null handle.
//
// # Safety
// `pulse` must be a live handle or null.
double bloic_pulse_nyquist_period(const struct BloicPulse *pulse);

// Spectral gain metric `exp(mean log G)` over the band.
//
// # Safety
// `pulse` must be a live handle; `out` a valid pointer.
enum BloicStatus bloic_pulse_gain_metric(const struct BloicPulse *pulse, double *out);

// Excursion metric at spacing `tau` (`tau <= 0` selects the native spacing).
// A divergent metric sets `*divergent = 1` and `*out = +inf` with status OK.
//
// # Safety
// `pulse` must be a live handle; `out` and `divergent` valid pointers.
enum BloicStatus bloic_pulse_excursion(const struct BloicPulse *pulse,
                                       double tau,
                                       double *out,
                                       int32_t *divergent);

// Evaluates a named bound (e.g. `"ExpS2"`) at linear `snr`. `r` and `a0`
// are read only by the PAPR and average-and-peak bounds.
//
// # Safety
// `name` must be a NUL-terminated string; `out` a valid pointer.
enum BloicStatus bloic_bound_evaluate(const char *name,
                                      double snr,
                                      double r,
                                      double a0,
                                      double *out);

// Evaluates a named bound on the dB grid `start, start+step, …, ≤ stop`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` a valid pointer.
enum BloicStatus bloic_curve_new(const char *name,
                                 double start_db,
                                 double stop_db,
                                 double step_db,
                                 double r,
                                 double a0,
                                 struct BloicCurve **out);

// # Safety
// `curve` must come from [`bloic_curve_new`] and not be used afterwards.
void bloic_curve_free(struct BloicCurve *curve);

// Number of grid points; 0 for a null handle.
//
// # Safety
// `curve` must be a live handle or null.
size_t bloic_curve_len(const struct BloicCurve *curve);

// Copies point `i` as `(snr_dB, bit/s/Hz)`.
//
// # Safety
// `curve` must be a live handle; `snr_db` and `value` valid pointers.
enum BloicStatus bloic_curve_point(const struct BloicCurve *curve,
                                   size_t i,
                                   double *snr_db,
                                   double *value);

// μ with `1/μ − 1/(e^μ − 1) = target`.
//
// # Safety
// `out` must be a valid pointer.
enum BloicStatus bloic_solve_mu(double target, double *out);

// ν for PAPR `r` and excursion `s`.
//
// # Safety
// `out` must be a valid pointer.
enum BloicStatus bloic_nu_from_papr(double r, double s, double *out);

// Best geometric spacing at `mean` with unit noise, and its rate in
// bit/s/Hz.
//
// # Safety
// `spacing` and `bits` must be valid pointers.
enum BloicStatus bloic_geometric_optimum(double mean, double *spacing, double *bits);

// Gap between the first upper bound and the exponential lower bound at
// linear `snr`.
//
// # Safety
// `bits` and `db` must be valid pointers.
enum BloicStatus bloic_asymptotic_gap(double snr, double *bits, double *db);

// DC-aided ISI-free bound at its best roll-off under an average limit.
//
// # Safety
// `rate` and `beta` must be valid pointers.
enum BloicStatus bloic_dc_aided_optimum(double snr, double *rate, double *beta);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOIC_H */
