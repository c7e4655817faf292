use super::denominator::denominator_with_gradient;
use super::structures::{composite_with, divide, gradient_square, ratio_with, spin_gradient_numerator, Derivatives};
use super::{F2TermReading, NonlinearityKind, PointField, RegularizationMode, TimeInput};
use crate::error::{Error, Result};
use crate::field::{scalar_derivative, scalar_laplacian, spin_density, pauli, PhysicalParams, SpinorField};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The nonlinearity `f_NR` of `kind` at every point.
///
/// For F1, F3, F4 and the ratio kinds the equation-of-motion term is
/// `−ε c f_NR φ`. F2 already carries ε and δ inside `f_NR` and enters with a
/// plus sign, see [`apply_nonlinear_term`].
pub fn eval_f(
    kind: &NonlinearityKind,
    f: &SpinorField,
    p: &PhysicalParams,
    mode: RegularizationMode,
    time: Option<TimeInput<'_>>,
) -> Result<PointField> {
    kind.validate(f.grid())?;
    let mut derivs = Derivatives::new(f);
    let d = denominator_with_gradient(f, Some(&derivs.grad), p, mode, None)?;
    match kind {
        NonlinearityKind::F1 => {
            let grid = f.grid();
            let s = spin_density(f);
            let mut div = vec![real(0.0); f.len()];
            for (k, &c) in grid.cartesian_axes().iter().enumerate() {
                let comp: Vec<_> = s.iter().map(|v| real(v[c])).collect();
                for (acc, v) in div.iter_mut().zip(scalar_derivative(grid, &comp, k, 1)) {
                    *acc += v;
                }
            }
            Ok(divide(div, &d))
        }
        NonlinearityKind::F2 { reading } => {
            let dt = time_derivative(f, p, time)?;
            let lap_term: Vec<Complex64> = match reading {
                F2TermReading::LaplacianOfDensity => {
                    let rho: Vec<_> = f.density().into_iter().map(real).collect();
                    scalar_laplacian(f.grid(), &rho)
                }
                F2TermReading::ConjugateLaplacianTimesField => {
                    let lap = derivs.laplacian(f);
                    lap.values().iter().zip(f.values()).map(|(l, phi)| l.dot(phi)).collect()
                }
            };
            let grad_sq = gradient_square(&derivs.grad);
            let time_coef = -I * (p.delta * p.m * p.c / p.hbar);
            let numerator = (0..f.len())
                .map(|i| {
                    let a = f.values()[i].dot(&dt.values()[i]);
                    time_coef * (a - a.conj()) + lap_term[i] * (p.epsilon * p.c) + grad_sq[i] * (p.delta * p.c)
                })
                .collect();
            Ok(divide(numerator, &d))
        }
        NonlinearityKind::F3 { a0, a } => {
            if a.iter().all(|&v| v == 0.0) {
                return Ok(PointField::regular(vec![real(*a0); f.len()]));
            }
            let grid = f.grid();
            let coef = -I * (p.hbar / (2.0 * p.m * p.c));
            let numerator = (0..f.len())
                .map(|i| {
                    let phi = f.values()[i];
                    let mut acc = real(0.0);
                    for (k, &c) in grid.cartesian_axes().iter().enumerate() {
                        if a[c] != 0.0 {
                            let j = phi.dot(&derivs.grad[k].values()[i]);
                            acc += (j - j.conj()) * a[c];
                        }
                    }
                    coef * acc
                })
                .collect();
            let mut out = divide(numerator, &d);
            for v in out.values.iter_mut() {
                *v += *a0;
            }
            Ok(out)
        }
        NonlinearityKind::F4 { a0, a } => {
            if *a0 == 0.0 && a.iter().all(|&v| v == 0.0) {
                return Ok(PointField::regular(vec![real(0.0); f.len()]));
            }
            let spin_grad = if *a0 != 0.0 {
                spin_gradient_numerator(f, &derivs.grad)
            } else {
                vec![real(0.0); f.len()]
            };
            let coef = -I * (p.hbar * a0 / (2.0 * p.m * p.c));
            let numerator = (0..f.len())
                .map(|i| {
                    let phi = f.values()[i];
                    let spin = phi.dot(&pauli::apply_vector(*a, phi));
                    let b = spin_grad[i];
                    spin + coef * (b - b.conj())
                })
                .collect();
            Ok(divide(numerator, &d))
        }
        NonlinearityKind::RatioX | NonlinearityKind::RatioY | NonlinearityKind::RatioZ => {
            ratio_with(kind, f, &mut derivs, &d)
        }
        NonlinearityKind::CompositeV | NonlinearityKind::CompositeW => composite_with(kind, f, &mut derivs, &d),
    }
}

fn time_derivative(f: &SpinorField, p: &PhysicalParams, time: Option<TimeInput<'_>>) -> Result<SpinorField> {
    match time {
        None => Err(Error::MissingInput(
            "the two-derivative nonlinearity needs a time derivative or a stationary energy".into(),
        )),
        Some(TimeInput::Derivative(dt)) => {
            f.grid().ensure_same(dt.grid())?;
            Ok(dt.clone())
        }
        Some(TimeInput::StationaryEnergy(e)) => Ok(f.scaled(-I * (e / p.hbar))),
    }
}

/// Multiplier of the free kinetic term `−ħ²∇²/2m` once the nonlinearity is
/// included. Only F2 changes it, to `1 + mcδ/2ħ²`.
pub fn kinetic_factor(kind: &NonlinearityKind, p: &PhysicalParams) -> f64 {
    match kind {
        NonlinearityKind::F2 { .. } => 1.0 + p.m * p.c * p.delta / (2.0 * p.hbar * p.hbar),
        _ => 1.0,
    }
}

/// The nonlinear contribution to `iħ∂ₜφ`.
#[derive(Debug, Clone)]
pub struct AppliedTerm {
    /// Zero at flagged points.
    pub term: SpinorField,
    pub flagged: Vec<usize>,
}

/// Full nonlinear right-hand side: `−εc f_NR φ`, or for F2 the terms of its
/// equation beyond the free kinetic energy, `−(cδ/4)∇²φ + f_NR φ`.
pub fn apply_nonlinear_term(
    kind: &NonlinearityKind,
    f: &SpinorField,
    p: &PhysicalParams,
    mode: RegularizationMode,
    time: Option<TimeInput<'_>>,
) -> Result<AppliedTerm> {
    let fnr = eval_f(kind, f, p, mode, time)?;
    let coupling = match kind {
        NonlinearityKind::F2 { .. } => 1.0,
        _ => -p.epsilon * p.c,
    };
    let mut term = f.map(|i, s| {
        let v = fnr.values[i];
        if v.is_finite() {
            s * (v * coupling)
        } else {
            crate::field::Spinor::ZERO
        }
    });
    if let NonlinearityKind::F2 { .. } = kind {
        let extra = -(kinetic_factor(kind, p) - 1.0) * p.hbar * p.hbar / (2.0 * p.m);
        if extra != 0.0 {
            let lap = crate::field::laplacian(f);
            for (t, l) in term.values_mut().iter_mut().zip(lap.values()) {
                *t += *l * extra;
            }
        }
    }
    Ok(AppliedTerm { term, flagged: fnr.flagged })
}

/// Real potential `V` with nonlinear term `V φ` (kinetic part of F2 excluded),
/// as used by the pointwise phase steps of the integrators.
#[derive(Debug, Clone)]
pub struct Potential {
    pub values: Vec<f64>,
    /// Largest `|Im f_NR|` over unflagged points.
    pub max_im_f: f64,
    pub flagged: Vec<usize>,
}

pub fn nonlinear_potential(
    kind: &NonlinearityKind,
    f: &SpinorField,
    p: &PhysicalParams,
    mode: RegularizationMode,
    time: Option<TimeInput<'_>>,
) -> Result<Potential> {
    let fnr = eval_f(kind, f, p, mode, time)?;
    let coupling = match kind {
        NonlinearityKind::F2 { .. } => 1.0,
        _ => -p.epsilon * p.c,
    };
    let values = fnr
        .values
        .iter()
        .map(|v| if v.is_finite() { coupling * v.re } else { 0.0 })
        .collect();
    Ok(Potential { values, max_im_f: fnr.max_imag(), flagged: fnr.flagged })
}

/// Largest `|f_NR(λφ) − f_NR(φ)|` over the supplied λ, skipping points
/// flagged in either evaluation.
pub fn scale_invariance_check(
    kind: &NonlinearityKind,
    f: &SpinorField,
    p: &PhysicalParams,
    mode: RegularizationMode,
    lambdas: &[Complex64],
    time: Option<TimeInput<'_>>,
) -> Result<f64> {
    let base = eval_f(kind, f, p, mode, time)?;
    let mut worst: f64 = 0.0;
    for &lambda in lambdas {
        if lambda == real(0.0) {
            return Err(Error::Degenerate("scale factor must be nonzero".into()));
        }
        let scaled = f.scaled(lambda);
        let scaled_dt;
        let t = match time {
            Some(TimeInput::Derivative(dt)) => {
                scaled_dt = dt.scaled(lambda);
                Some(TimeInput::Derivative(&scaled_dt))
            }
            other => other,
        };
        let g = eval_f(kind, &scaled, p, mode, t)?;
        for (a, b) in base.values.iter().zip(&g.values) {
            if a.is_finite() && b.is_finite() {
                worst = worst.max((a - b).norm());
            }
        }
    }
    Ok(worst)
}
