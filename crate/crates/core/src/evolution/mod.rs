//! Time stepping of `iħ∂ₜφ = −(ħ²/2m)∇²φ + N(φ)` with observers for the
//! conserved quantities, and the Galilean boost.

mod boost;
mod integrator;
mod linear;

pub use boost::{galilean_boost, linear_energy, momentum_expectation};
pub use integrator::{evolve, evolve_outcome, EvolutionOutcome, Integrator};

use crate::error::{Error, Result};
use crate::field::GridSpec;
use crate::nonlinearity::{NonlinearityKind, RegularizationMode};

/// Residual target of the implicit fixed-point iteration.
pub const FIXED_POINT_TOL: f64 = 1e-10;
pub const FIXED_POINT_MAX_ITER: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Half nonlinear phase, full linear step, half nonlinear phase.
    #[default]
    StrangSplit,
    /// Implicit midpoint step with the potential iterated to self-consistency.
    CrankNicolsonFull,
}

impl Scheme {
    pub fn label(&self) -> &'static str {
        match self {
            Scheme::StrangSplit => "strang_split",
            Scheme::CrankNicolsonFull => "crank_nicolson_full",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Observers {
    pub norm: bool,
    pub energy: bool,
    pub max_im_f: bool,
    /// One-dimensional grids only.
    pub node_positions: bool,
}

impl Default for Observers {
    fn default() -> Self {
        Observers { norm: true, energy: true, max_im_f: true, node_positions: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub dt: f64,
    /// Zero returns the initial field with a single sample.
    pub steps: usize,
    pub scheme: Scheme,
    pub kind: NonlinearityKind,
    pub mode: RegularizationMode,
    pub observers: Observers,
    pub observer_stride: usize,
}

impl EvolutionConfig {
    pub fn new(dt: f64, steps: usize, kind: NonlinearityKind) -> Self {
        EvolutionConfig {
            dt,
            steps,
            scheme: Scheme::StrangSplit,
            kind,
            mode: RegularizationMode::SmallComponent,
            observers: Observers::default(),
            observer_stride: 1,
        }
    }

    pub fn validate(&self, grid: &GridSpec) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::config(format!("dt must be positive, got {}", self.dt)));
        }
        if self.observer_stride == 0 {
            return Err(Error::config("observer_stride must be positive"));
        }
        if self.observers.node_positions && grid.dim() != 1 {
            return Err(Error::config("the node position observer needs a 1-d grid"));
        }
        self.mode.validate()?;
        self.kind.validate(grid)
    }

    /// Largest kinetic eigenvalue times `dt / ħ`. Both schemes are
    /// unconditionally stable; this measures phase accuracy of the fastest mode.
    pub fn accuracy_number(&self, grid: &GridSpec, p: &crate::field::PhysicalParams) -> f64 {
        let kmax: f64 = (0..grid.dim()).map(|k| (std::f64::consts::PI / grid.spacing(k)).powi(2)).sum();
        self.dt * p.hbar * kmax / (2.0 * p.m)
    }
}

/// One observation. Unobserved quantities are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub step: usize,
    pub time: f64,
    pub norm2: Option<f64>,
    pub energy: Option<f64>,
    pub max_im_f: Option<f64>,
    /// Sorted node coordinates of all components.
    pub nodes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObservationLog {
    pub samples: Vec<Sample>,
}

impl ObservationLog {
    pub fn max_nodes(&self) -> usize {
        self.samples.iter().map(|s| s.nodes.len()).max().unwrap_or(0)
    }

    /// Largest `|norm2/norm2₀ − 1|` over the log.
    pub fn norm_drift(&self) -> Option<f64> {
        let first = self.samples.first()?.norm2?;
        self.samples
            .iter()
            .map(|s| s.norm2.map(|n| (n / first - 1.0).abs()))
            .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
    }
}
