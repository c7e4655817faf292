use super::grid::GridSpec;
use super::spinor::{Component, Spinor};
use super::sum::CompensatedSum;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// A two-component complex field sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    grid: GridSpec,
    values: Vec<Spinor>,
}

impl SpinorField {
    pub fn new(grid: GridSpec, values: Vec<Spinor>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config(format!(
                "field has {} samples but the grid has {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|s| !s.is_finite()) {
            return Err(Error::config(format!("field value at point {i} is not finite")));
        }
        Ok(SpinorField { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        let n = grid.len();
        SpinorField { grid, values: vec![Spinor::ZERO; n] }
    }

    /// Sample `f` at every grid position.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> Spinor) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(&grid.position(i))).collect();
        Self::new(grid, values)
    }

    /// Build from per-point values without the finiteness scan.
    pub(crate) fn from_parts(grid: GridSpec, values: Vec<Spinor>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        SpinorField { grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Spinor] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Spinor] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Spinor> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn component(&self, c: Component) -> Vec<Complex64> {
        self.values.iter().map(|s| s.component(c)).collect()
    }

    pub fn map(&self, f: impl Fn(usize, Spinor) -> Spinor) -> SpinorField {
        let values = self.values.iter().enumerate().map(|(i, &s)| f(i, s)).collect();
        SpinorField::from_parts(self.grid.clone(), values)
    }

    pub fn scaled(&self, lambda: Complex64) -> SpinorField {
        self.map(|_, s| s * lambda)
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: Complex64, other: &SpinorField) -> Result<SpinorField> {
        self.grid.ensure_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a + b * alpha)
            .collect();
        Ok(SpinorField::from_parts(self.grid.clone(), values))
    }

    /// `|φ|²` at every point.
    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(Spinor::norm_sqr).collect()
    }

    pub fn max_density(&self) -> f64 {
        self.values.iter().map(Spinor::norm_sqr).fold(0.0, f64::max)
    }

    /// Quadrature of `|φ|²`.
    pub fn norm_sqr(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        for (i, s) in self.values.iter().enumerate() {
            acc.add(self.grid.weight(i) * s.norm_sqr());
        }
        acc.value()
    }

    /// Quadrature of `self† · other`.
    pub fn inner(&self, other: &SpinorField) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let mut re = CompensatedSum::default();
        let mut im = CompensatedSum::default();
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            let w = self.grid.weight(i);
            let z = a.dot(b);
            re.add(w * z.re);
            im.add(w * z.im);
        }
        Ok(Complex64::new(re.value(), im.value()))
    }

    pub fn normalised(&self) -> Result<SpinorField> {
        let n = self.norm_sqr();
        if !(n > 0.0) {
            return Err(Error::Degenerate("cannot normalise the zero field".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / n.sqrt(), 0.0)))
    }

    /// Largest pointwise `|self - other|`.
    pub fn max_distance(&self, other: &SpinorField) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a - b).norm_sqr().sqrt())
            .fold(0.0, f64::max))
    }

    /// `|⟨a|b⟩| / (‖a‖ ‖b‖)`.
    pub fn fidelity(&self, other: &SpinorField) -> Result<f64> {
        let ov = self.inner(other)?;
        let denom = (self.norm_sqr() * other.norm_sqr()).sqrt();
        if !(denom > 0.0) {
            return Err(Error::Degenerate("fidelity of a zero field".into()));
        }
        Ok(ov.norm() / denom)
    }
}
