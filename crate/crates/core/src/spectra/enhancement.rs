use super::nodes::{node_scan, Node};
use crate::error::{Error, Result};
use crate::field::{PhysicalParams, SpinorField};
use crate::nonlinearity::{eval_f, NonlinearityKind, RegularizationMode, TimeInput};

/// Where the shift integrand concentrates relative to the nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhancementProfile {
    /// `|φ† f_NR φ|` per point; NaN at flagged points.
    pub integrand: Vec<f64>,
    pub nodes: Vec<Node>,
    /// Half-Compton window radius around every node.
    pub window: f64,
    pub inside_max: f64,
    pub outside_max: f64,
    /// `inside_max / outside_max`; infinite if nothing outside is nonzero.
    pub ratio: f64,
    pub flagged_points: usize,
}

pub fn enhancement_profile(
    f: &SpinorField,
    kind: &NonlinearityKind,
    p: &PhysicalParams,
    mode: RegularizationMode,
    time: Option<TimeInput<'_>>,
) -> Result<EnhancementProfile> {
    let nodes = node_scan(f);
    if nodes.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let fnr = eval_f(kind, f, p, mode, time)?;
    let density = f.density();
    let integrand: Vec<f64> = fnr.values.iter().zip(&density).map(|(v, d)| (v * d).norm()).collect();
    let window = p.compton_half();
    let grid = f.grid();
    let (mut inside_max, mut outside_max) = (0.0f64, 0.0f64);
    for (i, g) in integrand.iter().enumerate() {
        if !g.is_finite() {
            continue;
        }
        let x = grid.position(i);
        let near = nodes.iter().any(|n| {
            let d2: f64 = n.position.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum();
            d2.sqrt() <= window
        });
        if near {
            inside_max = inside_max.max(*g);
        } else {
            outside_max = outside_max.max(*g);
        }
    }
    let ratio = if outside_max > 0.0 { inside_max / outside_max } else { f64::INFINITY };
    Ok(EnhancementProfile {
        integrand,
        nodes,
        window,
        inside_max,
        outside_max,
        ratio,
        flagged_points: fnr.flagged.len(),
    })
}
