use crate::error::{Error, Result};
use crate::field::{Boundary, GridSpec, PhysicalParams, Spinor, SpinorField};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Particle in a box spanning the grid, walls at the grid ends.
    Box,
    /// Unit-frequency harmonic oscillator centred at the coordinate origin.
    Harmonic,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Box => "box",
            Family::Harmonic => "harmonic",
        }
    }
}

/// Closed-form eigenstate of the linear equation times a constant spin.
/// Box quanta start at 1, harmonic quanta at 0. Units are ħ = m = ω = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticState {
    pub family: Family,
    pub quanta: Vec<u32>,
    spin: Spinor,
}

impl AnalyticState {
    /// The spin is normalised on construction.
    pub fn new(family: Family, quanta: Vec<u32>, spin: Spinor) -> Result<Self> {
        if quanta.is_empty() {
            return Err(Error::config("an analytic state needs at least one quantum number"));
        }
        if family == Family::Box && quanta.contains(&0) {
            return Err(Error::config("box quantum numbers start at 1"));
        }
        let spin = spin
            .normalised()
            .ok_or_else(|| Error::config("spin of an analytic state must be nonzero"))?;
        Ok(AnalyticState { family, quanta, spin })
    }

    pub fn spin(&self) -> Spinor {
        self.spin
    }

    /// Linear eigenvalue in ħ = m = 1 units.
    pub fn energy(&self, grid: &GridSpec) -> f64 {
        match self.family {
            Family::Box => self
                .quanta
                .iter()
                .zip(grid.lengths())
                .map(|(&n, &l)| 0.5 * (n as f64 * PI / l).powi(2))
                .sum(),
            Family::Harmonic => self.quanta.iter().map(|&n| n as f64 + 0.5).sum(),
        }
    }

    /// Eigenvalue for the given constants. Box energies scale as ħ²/m; the
    /// oscillator keeps ω = 1 and scales as ħ.
    pub fn energy_in(&self, grid: &GridSpec, p: &PhysicalParams) -> f64 {
        match self.family {
            Family::Box => self.energy(grid) * p.hbar * p.hbar / p.m,
            Family::Harmonic => self.energy(grid) * p.hbar,
        }
    }
}

/// Normalised Hermite function ψ_n(x) by the stable three-term recurrence.
pub fn hermite_function(n: u32, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let k = k as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * x * cur - (k / (k + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn make_eigenstate(s: &AnalyticState, grid: &GridSpec) -> Result<SpinorField> {
    if s.quanta.len() != grid.dim() {
        return Err(Error::config(format!(
            "{} quantum numbers for a {}-d grid",
            s.quanta.len(),
            grid.dim()
        )));
    }
    if s.family == Family::Box && grid.boundary() != Boundary::Dirichlet {
        return Err(Error::config("box eigenstates need a dirichlet grid"));
    }
    let origin = grid.origin().to_vec();
    let lengths = grid.lengths().to_vec();
    let spin = s.spin;
    SpinorField::from_fn(grid.clone(), |x| {
        let amp: f64 = (0..x.len())
            .map(|k| {
                let n = s.quanta[k];
                match s.family {
                    Family::Box => {
                        let l = lengths[k];
                        (2.0 / l).sqrt() * (n as f64 * PI * (x[k] - origin[k]) / l).sin()
                    }
                    Family::Harmonic => hermite_function(n, x[k]),
                }
            })
            .product();
        spin * amp
    })
}
