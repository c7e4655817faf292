use super::{RegularizationMode, SINGULAR_RTOL};
use crate::error::{Error, Result};
use crate::field::{gradient, small_component_from_gradient, GaugePotential, GridSpec, PhysicalParams, SpinorField};

#[derive(Debug, Clone, PartialEq)]
pub struct DenominatorReport {
    pub mode: RegularizationMode,
    /// The (possibly regularised and floored) denominator at every point.
    pub values: Vec<f64>,
    /// Sign changes of `values` between neighbouring points along any axis.
    pub zero_crossings: usize,
    /// Points whose magnitude was raised to the floor.
    pub floored_points: usize,
    /// Neighbouring point pairs across which `values` changes sign.
    pub crossing_pairs: Vec<(usize, usize)>,
    /// `max|φ|²`, the scale of the singularity threshold and the floor.
    pub max_density: f64,
}

impl DenominatorReport {
    /// Points where the denominator is zero to within [`SINGULAR_RTOL`].
    pub fn singular_points(&self) -> Vec<usize> {
        let threshold = SINGULAR_RTOL * self.max_density;
        self.values
            .iter()
            .enumerate()
            .filter(|(_, d)| !(d.abs() > threshold))
            .map(|(i, _)| i)
            .collect()
    }

    /// Linearly interpolated positions of the sign changes.
    pub fn crossing_positions(&self, grid: &GridSpec) -> Vec<Vec<f64>> {
        self.crossing_pairs
            .iter()
            .map(|&(a, b)| {
                let (da, db) = (self.values[a], self.values[b]);
                let t = da / (da - db);
                let (pa, pb) = (grid.position(a), grid.position(b));
                pa.iter().zip(&pb).map(|(x, y)| x + t * (y - x)).collect()
            })
            .collect()
    }
}

/// Denominator of the nonlinear ratios under a regularisation mode.
pub fn denominator(
    f: &SpinorField,
    p: &PhysicalParams,
    mode: RegularizationMode,
    gauge: Option<&GaugePotential>,
) -> Result<DenominatorReport> {
    denominator_with_gradient(f, None, p, mode, gauge)
}

pub(crate) fn denominator_with_gradient(
    f: &SpinorField,
    grad: Option<&[SpinorField]>,
    p: &PhysicalParams,
    mode: RegularizationMode,
    gauge: Option<&GaugePotential>,
) -> Result<DenominatorReport> {
    mode.validate()?;
    let max_density = f.max_density();
    if !(max_density > 0.0) {
        return Err(Error::Degenerate("denominator of the zero field".into()));
    }
    let mut values = f.density();
    let mut floored_points = 0;
    if mode != RegularizationMode::Unregularized {
        let owned;
        let grad = match grad {
            Some(g) => g,
            None => {
                owned = gradient(f);
                &owned
            }
        };
        let chi = small_component_from_gradient(f, grad, p, gauge)?;
        for (d, c) in values.iter_mut().zip(chi.values()) {
            *d -= c.norm_sqr();
        }
        if let RegularizationMode::SmallComponentFloored { tau } = mode {
            let floor = tau * max_density;
            for d in values.iter_mut() {
                if d.abs() < floor {
                    *d = if *d < 0.0 { -floor } else { floor };
                    floored_points += 1;
                }
            }
        }
    }
    let grid = f.grid();
    let mut crossing_pairs = Vec::new();
    for axis in 0..grid.dim() {
        let stride = grid.stride(axis);
        let n = grid.points()[axis];
        for start in grid.line_starts(axis) {
            for i in 0..n - 1 {
                let (a, b) = (start + i * stride, start + (i + 1) * stride);
                if values[a] * values[b] < 0.0 {
                    crossing_pairs.push((a, b));
                }
            }
        }
    }
    crossing_pairs.sort_unstable();
    Ok(DenominatorReport {
        mode,
        zero_crossings: crossing_pairs.len(),
        crossing_pairs,
        values,
        floored_points,
        max_density,
    })
}
