use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Physical constants of a run in dimensionless units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub m: f64,
    /// Speed of light, kept finite so that ħ/2mc is resolvable on a grid.
    pub c: f64,
    /// Gauge charge.
    pub e: f64,
    /// Nonlinearity strength ε.
    pub epsilon: f64,
    /// Second strength δ, used only by the two-derivative nonlinearity.
    pub delta: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            hbar: 1.0,
            m: 1.0,
            c: 10.0,
            e: 0.0,
            epsilon: 1e-3,
            delta: 0.0,
        }
    }
}

impl PhysicalParams {
    /// Half the reduced Compton length, ħ/2mc.
    pub fn compton_half(&self) -> f64 {
        self.hbar / (2.0 * self.m * self.c)
    }

    pub fn with_c(self, c: f64) -> Self {
        PhysicalParams { c, ..self }
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        PhysicalParams { epsilon, ..self }
    }

    /// Positivity and finiteness of every constant.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("hbar", self.hbar), ("m", self.m), ("c", self.c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        for (name, v) in [("e", self.e), ("epsilon", self.epsilon), ("delta", self.delta)] {
            if !v.is_finite() {
                return Err(Error::config(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Run-setup check: ħ/2mc must be shorter than every axis of the grid.
    pub fn validate_for(&self, grid: &GridSpec) -> Result<()> {
        self.validate()?;
        let ch = self.compton_half();
        if ch >= grid.min_length() {
            return Err(Error::config(format!(
                "setup validation failed: compton_half = hbar/(2 m c) = {ch} is not smaller than the shortest grid length {}",
                grid.min_length()
            )));
        }
        Ok(())
    }
}
