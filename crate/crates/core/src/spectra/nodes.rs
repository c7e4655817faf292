use crate::field::{Boundary, Component, SpinorField};
use num_complex::Complex64;

/// A sign change of one spin component along one grid line.
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub component: Component,
    pub axis: usize,
    pub position: Vec<f64>,
}

/// Samples below this fraction of a component's peak do not fix a sign.
const ZERO_RTOL: f64 = 1e-10;
/// Components below this fraction of the field peak are ignored.
const COMPONENT_RTOL: f64 = 1e-12;

/// Phase that makes `values` as real as possible: half the argument of `Σ v²`.
fn alignment_phase(values: &[Complex64]) -> Complex64 {
    let s: Complex64 = values.iter().map(|v| v * v).sum();
    if s.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, -0.5 * s.arg())
    }
}

/// Interior nodes of each spin component. Each component is rotated by a
/// constant phase to be as real as possible, then sign changes of its real
/// part are located by linear interpolation, skipping samples at roundoff
/// level. Dirichlet walls are never nodes.
pub fn node_scan(f: &SpinorField) -> Vec<Node> {
    let grid = f.grid();
    let peak = f.max_density().sqrt();
    let mut nodes = Vec::new();
    if peak == 0.0 {
        return nodes;
    }
    for c in Component::BOTH {
        let raw = f.component(c);
        let comp_peak = raw.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if comp_peak <= COMPONENT_RTOL * peak {
            continue;
        }
        let phase = alignment_phase(&raw);
        let re: Vec<f64> = raw.iter().map(|v| (v * phase).re).collect();
        let floor = ZERO_RTOL * comp_peak;
        for axis in 0..grid.dim() {
            let n = grid.points()[axis];
            let stride = grid.stride(axis);
            let h = grid.spacing(axis);
            let periodic = grid.boundary() == Boundary::Periodic;
            let len = if periodic { n + 1 } else { n };
            for start in grid.line_starts(axis) {
                let mut last: Option<(usize, f64)> = None;
                for step in 0..len {
                    let i = step % n;
                    let v = re[start + i * stride];
                    if v.abs() <= floor {
                        continue;
                    }
                    if let Some((s0, v0)) = last {
                        if v0 * v < 0.0 {
                            let t = v0 / (v0 - v);
                            let along = s0 as f64 + t * (step - s0) as f64;
                            let mut position = grid.position(start);
                            let mut x = grid.origin()[axis] + along * h;
                            if periodic && along >= n as f64 {
                                x -= grid.lengths()[axis];
                            }
                            position[axis] = x;
                            nodes.push(Node { component: c, axis, position });
                        }
                    }
                    last = Some((step, v));
                }
            }
        }
    }
    nodes
}
