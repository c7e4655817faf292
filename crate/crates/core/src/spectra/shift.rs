use super::states::{make_eigenstate, AnalyticState};
use crate::error::Result;
use crate::field::{CompensatedSum, GridSpec, PhysicalParams, SpinorField};
use crate::nonlinearity::{apply_nonlinear_term, eval_f, NonlinearityKind, RegularizationMode, TimeInput};
use num_complex::Complex64;

/// First-order energy shift of a state under one nonlinearity.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftReport {
    /// `∫ φ† f_NR φ` over unflagged points.
    pub i: Complex64,
    /// `⟨φ| nonlinear term ⟩`: `−εc I` for every kind except F2, whose
    /// term also carries the kinetic correction.
    pub delta_e: Complex64,
    /// `|Im I| / |I|`, zero when `I = 0`.
    pub im_fraction: f64,
    pub flagged_points: usize,
}

fn quadrature(grid: &GridSpec, values: impl Iterator<Item = (usize, Complex64)>) -> Complex64 {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for (i, v) in values {
        let w = grid.weight(i);
        re.add(w * v.re);
        im.add(w * v.im);
    }
    Complex64::new(re.value(), im.value())
}

pub fn shift_functional(
    f: &SpinorField,
    kind: &NonlinearityKind,
    p: &PhysicalParams,
    mode: RegularizationMode,
    time: Option<TimeInput<'_>>,
) -> Result<ShiftReport> {
    let fnr = eval_f(kind, f, p, mode, time)?;
    let grid = f.grid();
    let density = f.density();
    let i = quadrature(
        grid,
        fnr.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(k, v)| (k, v * density[k])),
    );
    let delta_e = match kind {
        NonlinearityKind::F2 { .. } => {
            let term = apply_nonlinear_term(kind, f, p, mode, time)?;
            f.inner(&term.term)?
        }
        _ => i * (-p.epsilon * p.c),
    };
    let im_fraction = if i.norm() > 0.0 { i.im.abs() / i.norm() } else { 0.0 };
    Ok(ShiftReport { i, delta_e, im_fraction, flagged_points: fnr.flagged.len() })
}

/// Shift of an analytic eigenstate sampled on `grid`. F2 receives the
/// state's stationary energy.
pub fn shift_for_state(
    state: &AnalyticState,
    grid: &GridSpec,
    kind: &NonlinearityKind,
    p: &PhysicalParams,
    mode: RegularizationMode,
) -> Result<ShiftReport> {
    let f = make_eigenstate(state, grid)?;
    let time = TimeInput::StationaryEnergy(state.energy_in(grid, p));
    shift_functional(&f, kind, p, mode, Some(time))
}
