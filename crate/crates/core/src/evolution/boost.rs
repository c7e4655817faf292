use crate::error::{Error, Result};
use crate::field::{laplacian, spectral, Boundary, Component, PhysicalParams, SpinorField};
use num_complex::Complex64;

/// Boost phases must be periodic on the grid to this relative accuracy.
const COMMENSURATE_TOL: f64 = 1e-9;

/// Galilean image of `f` at time `t` under velocity `v` (one entry per grid
/// axis): `φ′(x) = exp(i(m v·x − m v² t/2)/ħ) φ(x − v t)`.
///
/// The translation is spectral, so it is exact for band-limited fields. Each
/// `m v_k L_k / ħ` must be a multiple of 2π so the phase stays periodic.
pub fn galilean_boost(f: &SpinorField, v: &[f64], t: f64, p: &PhysicalParams) -> Result<SpinorField> {
    let grid = f.grid().clone();
    if grid.boundary() != Boundary::Periodic {
        return Err(Error::UnsupportedBoundary("galilean boost needs a periodic grid".into()));
    }
    if v.len() != grid.dim() {
        return Err(Error::config(format!("boost velocity has {} entries for a {}-d grid", v.len(), grid.dim())));
    }
    if v.iter().any(|x| !x.is_finite()) || !t.is_finite() {
        return Err(Error::config("boost velocity and time must be finite"));
    }
    let speed = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if speed * t.abs() > grid.min_length() {
        return Err(Error::config("boost displacement |v|t exceeds one box length"));
    }
    for k in 0..grid.dim() {
        let turns = p.m * v[k] * grid.lengths()[k] / (2.0 * std::f64::consts::PI * p.hbar);
        if (turns - turns.round()).abs() > COMMENSURATE_TOL * turns.abs().max(1.0) {
            return Err(Error::config(format!(
                "boost velocity along axis {k} is not commensurate with the box (m v L / 2πħ = {turns})"
            )));
        }
    }
    let mut out = f.clone();
    for c in Component::BOTH {
        let mut data = f.component(c);
        for k in 0..grid.dim() {
            let shift = v[k] * t;
            if shift != 0.0 {
                let m = spectral::translation_multiplier(grid.points()[k], grid.lengths()[k], shift);
                spectral::apply_multiplier(&grid, &mut data, k, &m);
            }
        }
        for (s, d) in out.values_mut().iter_mut().zip(data) {
            *s.component_mut(c) = d;
        }
    }
    let v2: f64 = v.iter().map(|x| x * x).sum();
    Ok(out.map(|i, s| {
        let x = grid.position(i);
        let vx: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
        s * Complex64::from_polar(1.0, p.m * (vx - 0.5 * v2 * t) / p.hbar)
    }))
}

/// `⟨φ|−iħ∇|φ⟩ / ⟨φ|φ⟩`, one entry per grid axis. Periodic grids use the
/// spectral derivative.
pub fn momentum_expectation(f: &SpinorField, p: &PhysicalParams) -> Result<Vec<f64>> {
    let grid = f.grid().clone();
    let norm = f.norm_sqr();
    if !(norm > 0.0) {
        return Err(Error::Degenerate("momentum of the zero field".into()));
    }
    let mut out = Vec::with_capacity(grid.dim());
    let grads = if grid.boundary() == Boundary::Dirichlet { Some(crate::field::gradient(f)) } else { None };
    for k in 0..grid.dim() {
        let d = match &grads {
            Some(g) => g[k].clone(),
            None => {
                let mult = spectral::derivative_multiplier(grid.points()[k], grid.lengths()[k]);
                let mut d = f.clone();
                for c in Component::BOTH {
                    let mut data = f.component(c);
                    spectral::apply_multiplier(&grid, &mut data, k, &mult);
                    for (s, v) in d.values_mut().iter_mut().zip(data) {
                        *s.component_mut(c) = v;
                    }
                }
                d
            }
        };
        let z = f.inner(&d)? * Complex64::new(0.0, -p.hbar);
        out.push(z.re / norm);
    }
    Ok(out)
}

/// `⟨φ|−ħ²∇²/2m|φ⟩ / ⟨φ|φ⟩`.
pub fn linear_energy(f: &SpinorField, p: &PhysicalParams) -> Result<f64> {
    let norm = f.norm_sqr();
    if !(norm > 0.0) {
        return Err(Error::Degenerate("energy of the zero field".into()));
    }
    let lap = laplacian(f);
    let z = f.inner(&lap)?;
    Ok(-p.hbar * p.hbar / (2.0 * p.m) * z.re / norm)
}
