#ifndef ENTBROADCAST_H
#define ENTBROADCAST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum EbStatus {
  EB_STATUS_OK = 0,
  EB_STATUS_NULL_POINTER = 1,
  EB_STATUS_INVALID_ARGUMENT = 2,
  EB_STATUS_INVALID_STATE = 3,
  EB_STATUS_UNSUPPORTED = 4,
  EB_STATUS_BUFFER_TOO_SMALL = 5,
  EB_STATUS_INTERNAL = 6,
} EbStatus;

enum EbCloner
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  EB_CLONER_LOCAL = 0,
  EB_CLONER_NONLOCAL = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum EbCloner EbCloner;
#else
typedef uint32_t EbCloner;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum EbDcFormula
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  EB_DC_FORMULA_UNCLAMPED = 0,
  EB_DC_FORMULA_CLAMPED = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum EbDcFormula EbDcFormula;
#else
typedef uint32_t EbDcFormula;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum EbFbConvention
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  EB_FB_CONVENTION_ROOT = 0,
  EB_FB_CONVENTION_SQUARED = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum EbFbConvention EbFbConvention;
#else
typedef uint32_t EbFbConvention;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum EbSampler
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  EB_SAMPLER_HILBERT_SCHMIDT = 0,
  EB_SAMPLER_BLOCH_REJECTION = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum EbSampler EbSampler;
#else
typedef uint32_t EbSampler;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum EbWernerSweep
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  // Sweep `p` at fixed `alpha^2`.
  EB_WERNER_SWEEP_P = 0,
  // Sweep `alpha^2` at fixed `p`.
  EB_WERNER_SWEEP_ALPHA2 = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum EbWernerSweep EbWernerSweep;
#else
typedef uint32_t EbWernerSweep;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum EbRangeMethod
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  // Closed-form inequalities.
  EB_RANGE_METHOD_ANALYTIC = 0,
  // Grid sweep with bisected endpoints.
  EB_RANGE_METHOD_NUMERIC = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum EbRangeMethod EbRangeMethod;
#else
typedef uint32_t EbRangeMethod;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Opaque two-qubit state.
typedef struct EbState EbState;

// Outcome of cloning one state.
typedef struct EbReport {
  bool input_inseparable;
  bool desired_pair_inseparable;
  bool side_pair_separable;
  bool broadcast_ok;
  double desired_min_pt_eigenvalue;
  double fb;
  double dtf;
  double ddc;
  double sum_tf;
  double sum_dc;
  double purity;
} EbReport;

// One interval of a broadcasting range.
typedef struct EbInterval {
  double lo;
  double hi;
  bool lo_open;
  bool hi_open;
} EbInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *eb_version(void);

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next call into the library from the same thread.
const char *eb_last_error_message(void);

// Werner-like state `p |psi><psi| + (1 - p) I/4`, `|psi> = a|00> + b|11>`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum EbStatus eb_state_werner(double p, double alpha2, struct EbState **out);

// Bell-diagonal state with correlation matrix `diag(c1, c2, c3)`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum EbStatus eb_state_bell_diagonal(double c1, double c2, double c3, struct EbState **out);

// State from its Bloch form: `x[3]`, `y[3]` and row-major `t[9]`.
//
// # Safety
// `x` and `y` must point to 3 doubles, `t` to 9, and `out` to writable
// storage for one handle.
enum EbStatus eb_state_from_bloch(const double *x,
                                  const double *y,
                                  const double *t,
                                  struct EbState **out);

// Random state drawn with a fixed seed from an [`EbSampler`] ensemble.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum EbStatus eb_state_random(uint64_t seed, uint32_t sampler, struct EbState **out);

// Releases a state. NULL is ignored.
//
// # Safety
// `state` must be NULL or a handle from this library not yet freed.
void eb_state_free(struct EbState *state);

// Copies the Bloch form into `x[3]`, `y[3]` and row-major `t[9]`.
//
// # Safety
// `state` must be a live handle; the arrays must hold 3, 3 and 9 doubles.
enum EbStatus eb_state_bloch(const struct EbState *state, double *x, double *y, double *t);

// Row-major 4x4 density matrix split into real and imaginary parts.
//
// # Safety
// `state` must be a live handle; `re` and `im` must hold 16 doubles each.
enum EbStatus eb_state_density(const struct EbState *state, double *re, double *im);

// `tr(rho^2)`.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum EbStatus eb_state_purity(const struct EbState *state, double *out);

// Maximal teleportation fidelity.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum EbStatus eb_teleportation_fidelity(const struct EbState *state, double *out);

// Dense-coding capacity in bits under an [`EbDcFormula`].
//
// # Safety
// `state` must be a live handle and `out` writable.
enum EbStatus eb_dense_coding_capacity(const struct EbState *state, uint32_t formula, double *out);

// Smallest partial-transpose eigenvalue and the PPT verdict.
//
// # Safety
// `state` must be a live handle; `min_eigenvalue` and `inseparable` writable.
enum EbStatus eb_ppt(const struct EbState *state, double *min_eigenvalue, bool *inseparable);

// Desired output pair of a cloner as a new state handle.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum EbStatus eb_clone_desired_pair(const struct EbState *state,
                                    uint32_t cloner,
                                    size_t n_copies,
                                    struct EbState **out);

// Clones `state` and fills `out` with the broadcast verdict and sums.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum EbStatus eb_broadcast_report(const struct EbState *state,
                                  uint32_t cloner,
                                  size_t n_copies,
                                  uint32_t dc,
                                  uint32_t fb,
                                  struct EbReport *out);

// Broadcasting range of the Werner-like family along `swept`
// ([`EbWernerSweep`]) with the other parameter fixed. Writes up to
// `capacity` intervals and stores the interval count in `count`; returns
// `BufferTooSmall` (with `count` set) when they do not fit.
//
// # Safety
// `intervals` must hold `capacity` elements (may be NULL when `capacity` is
// 0) and `count` must be writable.
enum EbStatus eb_werner_range(uint32_t cloner,
                              size_t n_copies,
                              uint32_t swept,
                              double fixed,
                              uint32_t method,
                              struct EbInterval *intervals,
                              size_t capacity,
                              size_t *count);

// Broadcasting range of the Bell-diagonal family along `c[swept]`
// (`swept` in 0..3), the other two coefficients taken from `c[3]`.
//
// # Safety
// `c` must point to 3 doubles; see [`eb_werner_range`] for the buffers.
enum EbStatus eb_bell_range(uint32_t cloner,
                            size_t n_copies,
                            const double *c,
                            uint32_t swept,
                            uint32_t method,
                            struct EbInterval *intervals,
                            size_t capacity,
                            size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTBROADCAST_H */
