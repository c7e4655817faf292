#ifndef NLSP_H
#define NLSP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  NLSP_BOUNDARY_DIRICHLET = 0,
  NLSP_BOUNDARY_PERIODIC = 1,
} NlspBoundary;

typedef enum {
  NLSP_FAMILY_BOX = 0,
  NLSP_FAMILY_HARMONIC = 1,
} NlspFamily;

typedef enum {
  NLSP_KIND_TAG_F1 = 0,
  NLSP_KIND_TAG_F2 = 1,
  NLSP_KIND_TAG_F3 = 2,
  NLSP_KIND_TAG_F4 = 3,
  NLSP_KIND_TAG_RATIO_X = 4,
  NLSP_KIND_TAG_RATIO_Y = 5,
  NLSP_KIND_TAG_RATIO_Z = 6,
  NLSP_KIND_TAG_COMPOSITE_V = 7,
  NLSP_KIND_TAG_COMPOSITE_W = 8,
} NlspKindTag;

typedef enum {
  NLSP_REGULARIZATION_UNREGULARIZED = 0,
  NLSP_REGULARIZATION_SMALL_COMPONENT = 1,
  NLSP_REGULARIZATION_SMALL_COMPONENT_FLOORED = 2,
} NlspRegularization;

typedef enum {
  NLSP_SCHEME_STRANG_SPLIT = 0,
  NLSP_SCHEME_CRANK_NICOLSON_FULL = 1,
} NlspScheme;

typedef enum {
  NLSP_STATUS_OK = 0,
  NLSP_STATUS_CONFIG = 1,
  NLSP_STATUS_DEGENERATE = 2,
  NLSP_STATUS_SINGULAR = 3,
  NLSP_STATUS_MISSING_INPUT = 4,
  NLSP_STATUS_STEP_FAILURE = 5,
  NLSP_STATUS_NULL_POINTER = 6,
  NLSP_STATUS_UNSUPPORTED = 7,
  NLSP_STATUS_IO = 8,
  NLSP_STATUS_EMPTY_PROFILE = 9,
  NLSP_STATUS_PANIC = 10,
} NlspStatus;

// Opaque spinor field on a grid.
typedef struct NlspField NlspField;

typedef struct {
  double hbar;
  double m;
  double c;
  double e;
  double epsilon;
  double delta;
} NlspParams;

// Which nonlinearity to use. `a0` and `a` are read by F3 and F4 only;
// `f2_conjugate_reading` selects `(∇²φ)†φ` for F2 when nonzero.
typedef struct {
  NlspKindTag tag;
  double a0;
  double a[3];
  int32_t f2_conjugate_reading;
} NlspKind;

// Denominator treatment; `floor_tau` is read only by the floored variant.
typedef struct {
  NlspRegularization regularization;
  double floor_tau;
} NlspMode;

typedef struct {
  double i_re;
  double i_im;
  double delta_e_re;
  double delta_e_im;
  double im_fraction;
  size_t flagged_points;
} NlspShift;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Default constants: ħ = m = 1, c = 10, e = 0, ε = 1e-3, δ = 0.
NlspParams nlsp_params_default(void);

// Message for the last failure on this thread, or NULL after a success.
// The string stays valid until the next call into this library on the
// same thread.
const char *nlsp_last_error_message(void);

// Build a field from interleaved samples `re_up, im_up, re_down, im_down`
// per grid point, row-major with the last axis fastest. `values` holds
// `4 * product(points)` doubles.
//
// # Safety
// `points` and `lengths` must point to `dim` readable elements, `values`
// to `values_len` doubles, and `out` must be writable.
NlspStatus nlsp_field_new(size_t dim,
                          const size_t *points,
                          const double *lengths,
                          NlspBoundary boundary,
                          const double *values,
                          size_t values_len,
                          NlspField **out);

// Closed-form linear eigenstate with spin up. `centred` places the grid
// symmetric about zero, as harmonic states expect.
//
// # Safety
// `points`, `lengths` and `quanta` must point to `dim` readable elements
// and `out` must be writable.
NlspStatus nlsp_field_eigenstate(NlspFamily family,
                                 size_t dim,
                                 const size_t *points,
                                 const double *lengths,
                                 NlspBoundary boundary,
                                 int32_t centred,
                                 const uint32_t *quanta,
                                 NlspField **out);

// Copy of a field.
//
// # Safety
// `f` must be a live handle and `out` writable.
NlspStatus nlsp_field_clone(const NlspField *f, NlspField **out);

// Release a field. NULL is ignored.
//
// # Safety
// `f` must be NULL or a handle from this library that has not been freed.
void nlsp_field_free(NlspField *f);

// Number of grid points, or 0 for NULL.
//
// # Safety
// `f` must be NULL or a live handle.
size_t nlsp_field_len(const NlspField *f);

// Write the samples in the layout of [`nlsp_field_new`].
//
// # Safety
// `f` must be a live handle and `out` must hold `out_len` doubles.
NlspStatus nlsp_field_values(const NlspField *f, double *out, size_t out_len);

// `∫|φ|²` by the grid quadrature.
//
// # Safety
// `f` must be a live handle and `out` writable.
NlspStatus nlsp_field_norm_sqr(const NlspField *f, double *out);

// Evaluate the nonlinearity pointwise. `out` receives `re, im` pairs
// (`2 * len` doubles) with NaN at singular points; `flagged`, if not NULL,
// receives 1 at those points and 0 elsewhere (`len` bytes).
// `stationary_energy` supplies ∂ₜφ = −iEφ/ħ for F2 and may be NULL otherwise.
//
// # Safety
// `f` must be a live handle; buffers must have the stated sizes.
NlspStatus nlsp_eval_f(const NlspField *f,
                       NlspKind kind,
                       NlspParams params,
                       NlspMode mode,
                       const double *stationary_energy,
                       double *out,
                       size_t out_len,
                       uint8_t *flagged);

// First-order shift `I = ∫φ†fφ` and the matching energy shift.
//
// # Safety
// `f` must be a live handle, `out` writable, `stationary_energy` NULL or
// readable.
NlspStatus nlsp_shift(const NlspField *f,
                      NlspKind kind,
                      NlspParams params,
                      NlspMode mode,
                      const double *stationary_energy,
                      NlspShift *out);

// Advance `f` in place by `steps` steps of size `dt`. On failure the field
// is left as it was and `norm_drift`, if not NULL, is untouched; on
// success it receives `max |N(t)/N(0) − 1|` over the run.
//
// # Safety
// `f` must be a live handle; `norm_drift` NULL or writable.
NlspStatus nlsp_evolve(NlspField *f,
                       NlspKind kind,
                       NlspParams params,
                       NlspMode mode,
                       NlspScheme scheme,
                       double dt,
                       size_t steps,
                       double *norm_drift);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLSP_H */
