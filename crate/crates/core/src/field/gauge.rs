use super::grid::GridSpec;
use crate::error::{Error, Result};

/// External vector potential sampled on a grid. Only the Cartesian components
/// spanned by the grid axes enter covariant derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugePotential {
    grid: GridSpec,
    values: Vec<[f64; 3]>,
}

impl GaugePotential {
    pub fn from_values(grid: GridSpec, values: Vec<[f64; 3]>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config(format!(
                "gauge potential has {} samples, grid has {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::config("gauge potential must be finite"));
        }
        Ok(GaugePotential { grid, values })
    }

    pub fn uniform(grid: GridSpec, a: [f64; 3]) -> Result<Self> {
        let n = grid.len();
        Self::from_values(grid, vec![a; n])
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> [f64; 3]) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(&grid.position(i))).collect();
        Self::from_values(grid, values)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[[f64; 3]] {
        &self.values
    }
}
