//! C interface to `nlsp-core`.
//!
//! Every function returns an [`NlspStatus`]. On failure a message is kept
//! per thread and can be read with [`nlsp_last_error_message`]. Fields are
//! opaque [`NlspField`] handles owned by the caller and released with
//! [`nlsp_field_free`].

use nlsp_core::evolution::{evolve, EvolutionConfig, Observers, Scheme};
use nlsp_core::field::Spinor;
use nlsp_core::nonlinearity::{eval_f, F2TermReading};
use nlsp_core::spectra::{make_eigenstate, shift_functional, AnalyticState, Family};
use nlsp_core::{Boundary, Error, GridSpec, NonlinearityKind, PhysicalParams, RegularizationMode, SpinorField, TimeInput};
use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlspStatus {
    Ok = 0,
    Config = 1,
    Degenerate = 2,
    Singular = 3,
    MissingInput = 4,
    StepFailure = 5,
    NullPointer = 6,
    Unsupported = 7,
    Io = 8,
    EmptyProfile = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlspBoundary {
    Dirichlet = 0,
    Periodic = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlspFamily {
    Box = 0,
    Harmonic = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlspKindTag {
    F1 = 0,
    F2 = 1,
    F3 = 2,
    F4 = 3,
    RatioX = 4,
    RatioY = 5,
    RatioZ = 6,
    CompositeV = 7,
    CompositeW = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlspRegularization {
    Unregularized = 0,
    SmallComponent = 1,
    SmallComponentFloored = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlspScheme {
    StrangSplit = 0,
    CrankNicolsonFull = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NlspParams {
    pub hbar: f64,
    pub m: f64,
    pub c: f64,
    pub e: f64,
    pub epsilon: f64,
    pub delta: f64,
}

/// Which nonlinearity to use. `a0` and `a` are read by F3 and F4 only;
/// `f2_conjugate_reading` selects `(∇²φ)†φ` for F2 when nonzero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NlspKind {
    pub tag: NlspKindTag,
    pub a0: f64,
    pub a: [f64; 3],
    pub f2_conjugate_reading: i32,
}

/// Denominator treatment; `floor_tau` is read only by the floored variant.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NlspMode {
    pub regularization: NlspRegularization,
    pub floor_tau: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NlspShift {
    pub i_re: f64,
    pub i_im: f64,
    pub delta_e_re: f64,
    pub delta_e_im: f64,
    pub im_fraction: f64,
    pub flagged_points: usize,
}

/// Opaque spinor field on a grid.
pub struct NlspField {
    inner: SpinorField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NlspStatus {
    match e {
        Error::Config(_) => NlspStatus::Config,
        Error::Degenerate(_) => NlspStatus::Degenerate,
        Error::MissingInput(_) => NlspStatus::MissingInput,
        Error::Singular { .. } => NlspStatus::Singular,
        Error::StepFailure { .. } => NlspStatus::StepFailure,
        Error::UnsupportedBoundary(_) => NlspStatus::Unsupported,
        Error::EmptyProfile => NlspStatus::EmptyProfile,
        Error::Io(_) => NlspStatus::Io,
    }
}

enum Failure {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NlspStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NlspStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            NlspStatus::NullPointer
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            NlspStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &'static str) -> Result<*const T, Failure> {
    if p.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(p)
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    non_null(p, what)?;
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn field_ref<'a>(f: *const NlspField) -> Result<&'a SpinorField, Failure> {
    non_null(f, "field")?;
    Ok(&(*f).inner)
}

unsafe fn grid_from(
    dim: usize,
    points: *const usize,
    lengths: *const f64,
    boundary: NlspBoundary,
) -> Result<GridSpec, Failure> {
    let pts = slice(points, dim, "points")?.to_vec();
    let lens = slice(lengths, dim, "lengths")?.to_vec();
    let bc = match boundary {
        NlspBoundary::Dirichlet => Boundary::Dirichlet,
        NlspBoundary::Periodic => Boundary::Periodic,
    };
    Ok(GridSpec::new(pts, lens, bc)?)
}

impl From<NlspParams> for PhysicalParams {
    fn from(p: NlspParams) -> Self {
        PhysicalParams { hbar: p.hbar, m: p.m, c: p.c, e: p.e, epsilon: p.epsilon, delta: p.delta }
    }
}

impl From<NlspKind> for NonlinearityKind {
    fn from(k: NlspKind) -> Self {
        match k.tag {
            NlspKindTag::F1 => NonlinearityKind::F1,
            NlspKindTag::F2 => NonlinearityKind::F2 {
                reading: if k.f2_conjugate_reading != 0 {
                    F2TermReading::ConjugateLaplacianTimesField
                } else {
                    F2TermReading::LaplacianOfDensity
                },
            },
            NlspKindTag::F3 => NonlinearityKind::F3 { a0: k.a0, a: k.a },
            NlspKindTag::F4 => NonlinearityKind::F4 { a0: k.a0, a: k.a },
            NlspKindTag::RatioX => NonlinearityKind::RatioX,
            NlspKindTag::RatioY => NonlinearityKind::RatioY,
            NlspKindTag::RatioZ => NonlinearityKind::RatioZ,
            NlspKindTag::CompositeV => NonlinearityKind::CompositeV,
            NlspKindTag::CompositeW => NonlinearityKind::CompositeW,
        }
    }
}

impl From<NlspMode> for RegularizationMode {
    fn from(m: NlspMode) -> Self {
        match m.regularization {
            NlspRegularization::Unregularized => RegularizationMode::Unregularized,
            NlspRegularization::SmallComponent => RegularizationMode::SmallComponent,
            NlspRegularization::SmallComponentFloored => RegularizationMode::SmallComponentFloored { tau: m.floor_tau },
        }
    }
}

fn checked_mode(m: NlspMode) -> Result<RegularizationMode, Failure> {
    let mode = RegularizationMode::from(m);
    mode.validate()?;
    Ok(mode)
}

unsafe fn time_input<'a>(stationary_energy: *const f64) -> Option<TimeInput<'a>> {
    if stationary_energy.is_null() {
        None
    } else {
        Some(TimeInput::StationaryEnergy(*stationary_energy))
    }
}

fn boxed(f: SpinorField, out: *mut *mut NlspField) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    unsafe { *out = Box::into_raw(Box::new(NlspField { inner: f })) };
    Ok(())
}

/// Default constants: ħ = m = 1, c = 10, e = 0, ε = 1e-3, δ = 0.
#[no_mangle]
pub extern "C" fn nlsp_params_default() -> NlspParams {
    let p = PhysicalParams::default();
    NlspParams { hbar: p.hbar, m: p.m, c: p.c, e: p.e, epsilon: p.epsilon, delta: p.delta }
}

/// Message for the last failure on this thread, or NULL after a success.
/// The string stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn nlsp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build a field from interleaved samples `re_up, im_up, re_down, im_down`
/// per grid point, row-major with the last axis fastest. `values` holds
/// `4 * product(points)` doubles.
///
/// # Safety
/// `points` and `lengths` must point to `dim` readable elements, `values`
/// to `values_len` doubles, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlsp_field_new(
    dim: usize,
    points: *const usize,
    lengths: *const f64,
    boundary: NlspBoundary,
    values: *const f64,
    values_len: usize,
    out: *mut *mut NlspField,
) -> NlspStatus {
    guard(|| {
        let grid = grid_from(dim, points, lengths, boundary)?;
        if values_len != 4 * grid.len() {
            return Err(Error::Config(format!(
                "expected {} doubles for {} points, got {values_len}",
                4 * grid.len(),
                grid.len()
            ))
            .into());
        }
        let raw = slice(values, values_len, "values")?;
        let spinors = raw
            .chunks_exact(4)
            .map(|c| Spinor::new(Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3])))
            .collect();
        boxed(SpinorField::new(grid, spinors)?, out)
    })
}

/// Closed-form linear eigenstate with spin up. `centred` places the grid
/// symmetric about zero, as harmonic states expect.
///
/// # Safety
/// `points`, `lengths` and `quanta` must point to `dim` readable elements
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlsp_field_eigenstate(
    family: NlspFamily,
    dim: usize,
    points: *const usize,
    lengths: *const f64,
    boundary: NlspBoundary,
    centred: i32,
    quanta: *const u32,
    out: *mut *mut NlspField,
) -> NlspStatus {
    guard(|| {
        let mut grid = grid_from(dim, points, lengths, boundary)?;
        if centred != 0 {
            grid = grid.centred();
        }
        let fam = match family {
            NlspFamily::Box => Family::Box,
            NlspFamily::Harmonic => Family::Harmonic,
        };
        let q = slice(quanta, dim, "quanta")?.to_vec();
        let state = AnalyticState::new(fam, q, Spinor::real(1.0, 0.0))?;
        boxed(make_eigenstate(&state, &grid)?, out)
    })
}

/// Copy of a field.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nlsp_field_clone(f: *const NlspField, out: *mut *mut NlspField) -> NlspStatus {
    guard(|| boxed(field_ref(f)?.clone(), out))
}

/// Release a field. NULL is ignored.
///
/// # Safety
/// `f` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nlsp_field_free(f: *mut NlspField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of grid points, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlsp_field_len(f: *const NlspField) -> usize {
    if f.is_null() {
        0
    } else {
        (*f).inner.len()
    }
}

/// Write the samples in the layout of [`nlsp_field_new`].
///
/// # Safety
/// `f` must be a live handle and `out` must hold `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nlsp_field_values(f: *const NlspField, out: *mut f64, out_len: usize) -> NlspStatus {
    guard(|| {
        let field = field_ref(f)?;
        if out_len != 4 * field.len() {
            return Err(Error::Config(format!("expected a buffer of {} doubles, got {out_len}", 4 * field.len())).into());
        }
        non_null(out, "out")?;
        let buf = std::slice::from_raw_parts_mut(out, out_len);
        for (c, s) in buf.chunks_exact_mut(4).zip(field.values()) {
            c.copy_from_slice(&[s.up.re, s.up.im, s.down.re, s.down.im]);
        }
        Ok(())
    })
}

/// `∫|φ|²` by the grid quadrature.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nlsp_field_norm_sqr(f: *const NlspField, out: *mut f64) -> NlspStatus {
    guard(|| {
        let v = field_ref(f)?.norm_sqr();
        non_null(out, "out")?;
        *out = v;
        Ok(())
    })
}

/// Evaluate the nonlinearity pointwise. `out` receives `re, im` pairs
/// (`2 * len` doubles) with NaN at singular points; `flagged`, if not NULL,
/// receives 1 at those points and 0 elsewhere (`len` bytes).
/// `stationary_energy` supplies ∂ₜφ = −iEφ/ħ for F2 and may be NULL otherwise.
///
/// # Safety
/// `f` must be a live handle; buffers must have the stated sizes.
#[no_mangle]
pub unsafe extern "C" fn nlsp_eval_f(
    f: *const NlspField,
    kind: NlspKind,
    params: NlspParams,
    mode: NlspMode,
    stationary_energy: *const f64,
    out: *mut f64,
    out_len: usize,
    flagged: *mut u8,
) -> NlspStatus {
    guard(|| {
        let field = field_ref(f)?;
        let n = field.len();
        if out_len != 2 * n {
            return Err(Error::Config(format!("expected a buffer of {} doubles, got {out_len}", 2 * n)).into());
        }
        non_null(out, "out")?;
        let r = eval_f(&kind.into(), field, &params.into(), checked_mode(mode)?, time_input(stationary_energy))?;
        let buf = std::slice::from_raw_parts_mut(out, out_len);
        for (c, v) in buf.chunks_exact_mut(2).zip(&r.values) {
            c[0] = v.re;
            c[1] = v.im;
        }
        if !flagged.is_null() {
            let marks = std::slice::from_raw_parts_mut(flagged, n);
            marks.fill(0);
            for &i in &r.flagged {
                marks[i] = 1;
            }
        }
        Ok(())
    })
}

/// First-order shift `I = ∫φ†fφ` and the matching energy shift.
///
/// # Safety
/// `f` must be a live handle, `out` writable, `stationary_energy` NULL or
/// readable.
#[no_mangle]
pub unsafe extern "C" fn nlsp_shift(
    f: *const NlspField,
    kind: NlspKind,
    params: NlspParams,
    mode: NlspMode,
    stationary_energy: *const f64,
    out: *mut NlspShift,
) -> NlspStatus {
    guard(|| {
        let field = field_ref(f)?;
        non_null(out, "out")?;
        let r = shift_functional(field, &kind.into(), &params.into(), checked_mode(mode)?, time_input(stationary_energy))?;
        *out = NlspShift {
            i_re: r.i.re,
            i_im: r.i.im,
            delta_e_re: r.delta_e.re,
            delta_e_im: r.delta_e.im,
            im_fraction: r.im_fraction,
            flagged_points: r.flagged_points,
        };
        Ok(())
    })
}

/// Advance `f` in place by `steps` steps of size `dt`. On failure the field
/// is left as it was and `norm_drift`, if not NULL, is untouched; on
/// success it receives `max |N(t)/N(0) − 1|` over the run.
///
/// # Safety
/// `f` must be a live handle; `norm_drift` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn nlsp_evolve(
    f: *mut NlspField,
    kind: NlspKind,
    params: NlspParams,
    mode: NlspMode,
    scheme: NlspScheme,
    dt: f64,
    steps: usize,
    norm_drift: *mut f64,
) -> NlspStatus {
    guard(|| {
        non_null(f, "field")?;
        let mut cfg = EvolutionConfig::new(dt, steps, kind.into());
        cfg.mode = checked_mode(mode)?;
        cfg.scheme = match scheme {
            NlspScheme::StrangSplit => Scheme::StrangSplit,
            NlspScheme::CrankNicolsonFull => Scheme::CrankNicolsonFull,
        };
        cfg.observers = Observers { norm: true, energy: false, max_im_f: false, node_positions: false };
        let (next, log) = evolve(&(*f).inner, &cfg, &params.into())?;
        (*f).inner = next;
        if !norm_drift.is_null() {
            *norm_drift = log.norm_drift().unwrap_or(0.0);
        }
        Ok(())
    })
}
