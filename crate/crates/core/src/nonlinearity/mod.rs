//! Regularised denominators, the ratio structures X, Y, Z, the composites
//! V, W and the four non-relativistic nonlinearities.
//!
//! Every evaluation returns a [`PointField`]: per-point complex values plus
//! the list of points where the value is singular. Singular values are NaN
//! and must be skipped by consumers.

mod denominator;
mod kinds;
mod structures;

pub use denominator::{denominator, DenominatorReport};
pub use kinds::{
    apply_nonlinear_term, eval_f, kinetic_factor, nonlinear_potential, scale_invariance_check,
    AppliedTerm, Potential,
};
pub use structures::{composite, ratio_structure};

use crate::error::{Error, Result};
use crate::field::{GridSpec, SpinorField};
use num_complex::Complex64;

/// Floor used by [`RegularizationMode::SmallComponentFloored`] when none is given.
pub const DEFAULT_FLOOR_TAU: f64 = 1e-8;

/// A denominator with `|D| <= SINGULAR_RTOL * max|φ|²` is treated as zero.
/// That is an amplitude ratio of 1e-12, well above the roundoff left at a
/// sampled node.
pub const SINGULAR_RTOL: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegularizationMode {
    /// `D = |φ|²`
    Unregularized,
    /// `D = |φ|² − |χ₀|²`
    SmallComponent,
    /// As `SmallComponent`, with `|D|` clamped from below at `tau · max|φ|²`.
    SmallComponentFloored { tau: f64 },
}

impl RegularizationMode {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RegularizationMode::SmallComponentFloored { tau } if !(tau.is_finite() && tau > 0.0) => {
                Err(Error::config(format!("floor tau must be positive, got {tau}")))
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RegularizationMode::Unregularized => "unregularized",
            RegularizationMode::SmallComponent => "small_component",
            RegularizationMode::SmallComponentFloored { .. } => "small_component_floored",
        }
    }
}

/// Reading of the `(∇²φ†φ)` term of the two-derivative nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum F2TermReading {
    /// `∇²(φ†φ)`, matching the `∂_μ∂^μ(ψ̄ψ)` it descends from.
    #[default]
    LaplacianOfDensity,
    /// `(∇²φ)†φ`
    ConjugateLaplacianTimesField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NonlinearityKind {
    /// Lorentz-invariant, one derivative: `∇·(φ†σφ) / D`.
    F1,
    /// Lorentz-invariant, two derivatives; strengths ε and δ come from
    /// [`PhysicalParams`](crate::field::PhysicalParams).
    F2 { reading: F2TermReading },
    /// Lorentz-violating, parity even, constant background `(a0, a)`.
    F3 { a0: f64, a: [f64; 3] },
    /// Lorentz-violating, parity odd, constant background `(a0, a)`.
    F4 { a0: f64, a: [f64; 3] },
    RatioX,
    RatioY,
    RatioZ,
    /// `V = Y²`
    CompositeV,
    /// `W = Y Z`
    CompositeW,
}

impl NonlinearityKind {
    pub const F2_DEFAULT: NonlinearityKind = NonlinearityKind::F2 {
        reading: F2TermReading::LaplacianOfDensity,
    };

    /// Background vectors may only point along axes the grid spans.
    pub fn validate(&self, grid: &GridSpec) -> Result<()> {
        match self {
            NonlinearityKind::F3 { a0, a } | NonlinearityKind::F4 { a0, a } => {
                if !a0.is_finite() || a.iter().any(|v| !v.is_finite()) {
                    return Err(Error::config("background field must be finite"));
                }
                for (c, v) in a.iter().enumerate() {
                    if *v != 0.0 && !grid.spans_cartesian(c) {
                        return Err(Error::config(format!(
                            "background component A[{c}] = {v} lies along an axis the {}-d grid does not span",
                            grid.dim()
                        )));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NonlinearityKind::F1 => "f1",
            NonlinearityKind::F2 { .. } => "f2",
            NonlinearityKind::F3 { .. } => "f3",
            NonlinearityKind::F4 { .. } => "f4",
            NonlinearityKind::RatioX => "x",
            NonlinearityKind::RatioY => "y",
            NonlinearityKind::RatioZ => "z",
            NonlinearityKind::CompositeV => "v",
            NonlinearityKind::CompositeW => "w",
        }
    }

    pub fn needs_time_input(&self) -> bool {
        matches!(self, NonlinearityKind::F2 { .. })
    }
}

/// Source of `∂ₜφ` for nonlinearities that contain a time derivative.
#[derive(Debug, Clone, Copy)]
pub enum TimeInput<'a> {
    Derivative(&'a SpinorField),
    /// Stationary state: `∂ₜφ = −(iE/ħ) φ`.
    StationaryEnergy(f64),
}

/// Per-point complex values with singular points flagged.
#[derive(Debug, Clone, PartialEq)]
pub struct PointField {
    pub values: Vec<Complex64>,
    /// Flat indices of singular points, ascending. Their values are NaN.
    pub flagged: Vec<usize>,
}

impl PointField {
    pub(crate) fn regular(values: Vec<Complex64>) -> Self {
        PointField { values, flagged: Vec::new() }
    }

    pub fn is_flagged(&self, i: usize) -> bool {
        self.flagged.binary_search(&i).is_ok()
    }

    /// Largest `|Im f|` over unflagged points.
    pub fn max_imag(&self) -> f64 {
        self.values
            .iter()
            .filter(|v| v.is_finite())
            .map(|v| v.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .filter(|v| v.is_finite())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Pointwise product, flags merged.
    pub fn mul(&self, other: &PointField) -> PointField {
        let values: Vec<_> = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        let mut flagged: Vec<_> = self.flagged.iter().chain(&other.flagged).copied().collect();
        flagged.sort_unstable();
        flagged.dedup();
        PointField { values, flagged }
    }
}
