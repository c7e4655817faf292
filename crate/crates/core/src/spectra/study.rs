use super::shift::shift_for_state;
use super::states::AnalyticState;
use crate::error::{Error, Result};
use crate::field::{GridSpec, PhysicalParams};
use crate::nonlinearity::{NonlinearityKind, RegularizationMode};
use num_complex::Complex64;

/// Largest `|slope|` of `log|I|` against `log N` still called convergent.
pub const CONVERGENT_SLOPE: f64 = 0.1;
/// Smallest slope called divergent.
pub const DIVERGENT_SLOPE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Convergent {
        /// Richardson extrapolation from the last three levels.
        limit: f64,
        /// `|limit − I_last|`.
        richardson_error: f64,
        /// Observed order in `N`; `None` when the last differences vanish.
        order: Option<f64>,
    },
    Divergent { exponent: f64 },
    Inconclusive { slope: f64 },
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Convergent { .. } => "convergent",
            Classification::Divergent { .. } => "divergent",
            Classification::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub levels: Vec<usize>,
    pub values: Vec<Complex64>,
    pub flagged: Vec<usize>,
    /// Least-squares slope of `log|I|` against `log N`.
    pub slope: f64,
    pub classification: Classification,
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Successive differences shrink and keep one sign, or are negligible.
fn richardson_consistent(values: &[f64]) -> bool {
    let scale = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let tiny = 1e-12 * scale;
    if diffs.iter().all(|d| d.abs() <= tiny) {
        return true;
    }
    diffs.windows(2).all(|w| {
        (w[1].abs() <= tiny) || (w[0] * w[1] > 0.0 && w[1].abs() < w[0].abs())
    })
}

fn richardson(levels: &[usize], values: &[f64]) -> (f64, f64, Option<f64>) {
    let k = values.len();
    let (a, b, c) = (values[k - 3], values[k - 2], values[k - 1]);
    let (d1, d2) = (b - a, c - b);
    let ratio = levels[k - 1] as f64 / levels[k - 2] as f64;
    if d2 == 0.0 || d1 == 0.0 || d1 * d2 <= 0.0 {
        return (c, d2.abs(), None);
    }
    let order = (d1 / d2).ln() / ratio.ln();
    let limit = c + d2 / (ratio.powf(order) - 1.0);
    (limit, (limit - c).abs(), Some(order))
}

/// Evaluate the shift of `state` on each refinement level of `grid` and
/// classify its behaviour as `N` grows.
pub fn convergence_study(
    state: &AnalyticState,
    grid: &GridSpec,
    kind: &NonlinearityKind,
    p: &PhysicalParams,
    mode: RegularizationMode,
    levels: &[usize],
) -> Result<ConvergenceReport> {
    if levels.len() < 3 {
        return Err(Error::config(format!("a study needs at least 3 levels, got {}", levels.len())));
    }
    if levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::config("study levels must be strictly increasing"));
    }
    let mut values = Vec::with_capacity(levels.len());
    let mut flagged = Vec::with_capacity(levels.len());
    for &n in levels {
        let g = grid.with_points(n)?;
        let r = shift_for_state(state, &g, kind, p, mode)?;
        values.push(r.i);
        flagged.push(r.flagged_points);
    }
    let logn: Vec<f64> = levels.iter().map(|&n| (n as f64).ln()).collect();
    let logi: Vec<f64> = values.iter().map(|v| v.norm().ln()).collect();
    let slope = if logi.iter().all(|v| v.is_finite()) { fit_slope(&logn, &logi) } else { f64::NAN };
    let re: Vec<f64> = values.iter().map(|v| v.re).collect();
    let classification = if slope.abs() <= CONVERGENT_SLOPE && richardson_consistent(&re) {
        let (limit, richardson_error, order) = richardson(levels, &re);
        Classification::Convergent { limit, richardson_error, order }
    } else if slope >= DIVERGENT_SLOPE {
        Classification::Divergent { exponent: slope }
    } else {
        Classification::Inconclusive { slope }
    };
    Ok(ConvergenceReport { levels: levels.to_vec(), values, flagged, slope, classification })
}
