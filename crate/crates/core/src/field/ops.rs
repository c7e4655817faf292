//! Differential operators, spin density and the leading small component.

use super::gauge::GaugePotential;
use super::grid::{Boundary, DerivativeScheme, GridSpec};
use super::params::PhysicalParams;
use super::pauli;
use super::spectral;
use super::spinor::{Component, Spinor};
use super::spinor_field::SpinorField;
use crate::error::Result;
use num_complex::Complex64;

/// Coefficient κ of the covariant derivative `∂_k − κ (e/c) A_k` used in the
/// small component. Textbook minimal coupling would put `i/ħ` here; the
/// convention below follows the displayed real form.
pub const COVARIANT_COUPLING: Complex64 = Complex64::new(1.0, 0.0);

/// Derivative of order 1 or 2 of complex scalar samples along `axis`.
pub fn scalar_derivative(grid: &GridSpec, data: &[Complex64], axis: usize, order: u8) -> Vec<Complex64> {
    assert!(order == 1 || order == 2, "derivative order must be 1 or 2");
    assert_eq!(data.len(), grid.len());
    let mut out = data.to_vec();
    match grid.scheme() {
        DerivativeScheme::Spectral => {
            let (n, l) = (grid.points()[axis], grid.lengths()[axis]);
            let mult = if order == 1 {
                spectral::derivative_multiplier(n, l)
            } else {
                spectral::second_derivative_multiplier(n, l)
            };
            spectral::apply_multiplier(grid, &mut out, axis, &mult);
        }
        DerivativeScheme::Central => {
            let n = grid.points()[axis];
            let stride = grid.stride(axis);
            let h = grid.spacing(axis);
            let periodic = grid.boundary() == Boundary::Periodic;
            let mut line = vec![Complex64::new(0.0, 0.0); n];
            let mut res = vec![Complex64::new(0.0, 0.0); n];
            for start in grid.line_starts(axis) {
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[start + i * stride];
                }
                if order == 1 {
                    central_first(&line, h, periodic, &mut res);
                } else {
                    central_second(&line, h, periodic, &mut res);
                }
                for (i, v) in res.iter().enumerate() {
                    out[start + i * stride] = *v;
                }
            }
        }
    }
    out
}

fn central_first(f: &[Complex64], h: f64, periodic: bool, out: &mut [Complex64]) {
    let n = f.len();
    let inv = 1.0 / (2.0 * h);
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - f[i - 1]) * inv;
    }
    if periodic {
        out[0] = (f[1] - f[n - 1]) * inv;
        out[n - 1] = (f[0] - f[n - 2]) * inv;
    } else {
        out[0] = (f[0] * -3.0 + f[1] * 4.0 - f[2]) * inv;
        out[n - 1] = (f[n - 1] * 3.0 - f[n - 2] * 4.0 + f[n - 3]) * inv;
    }
}

fn central_second(f: &[Complex64], h: f64, periodic: bool, out: &mut [Complex64]) {
    let n = f.len();
    let inv = 1.0 / (h * h);
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - f[i] * 2.0 + f[i - 1]) * inv;
    }
    if periodic {
        out[0] = (f[1] - f[0] * 2.0 + f[n - 1]) * inv;
        out[n - 1] = (f[0] - f[n - 1] * 2.0 + f[n - 2]) * inv;
    } else if n >= 4 {
        out[0] = (f[0] * 2.0 - f[1] * 5.0 + f[2] * 4.0 - f[3]) * inv;
        out[n - 1] = (f[n - 1] * 2.0 - f[n - 2] * 5.0 + f[n - 3] * 4.0 - f[n - 4]) * inv;
    } else {
        out[0] = (f[0] - f[1] * 2.0 + f[2]) * inv;
        out[n - 1] = out[0];
    }
}

fn spinor_derivative(f: &SpinorField, axis: usize, order: u8) -> SpinorField {
    let grid = f.grid();
    let up = scalar_derivative(grid, &f.component(Component::Up), axis, order);
    let down = scalar_derivative(grid, &f.component(Component::Down), axis, order);
    let values = up.into_iter().zip(down).map(|(u, d)| Spinor::new(u, d)).collect();
    SpinorField::from_parts(grid.clone(), values)
}

/// `∂_k φ` for every grid axis `k`.
pub fn gradient(f: &SpinorField) -> Vec<SpinorField> {
    (0..f.grid().dim()).map(|k| spinor_derivative(f, k, 1)).collect()
}

/// Sum of per-axis second derivatives.
pub fn laplacian(f: &SpinorField) -> SpinorField {
    let mut acc = spinor_derivative(f, 0, 2);
    for k in 1..f.grid().dim() {
        let d = spinor_derivative(f, k, 2);
        for (a, b) in acc.values_mut().iter_mut().zip(d.values()) {
            *a += *b;
        }
    }
    acc
}

/// Laplacian of complex scalar samples.
pub fn scalar_laplacian(grid: &GridSpec, data: &[Complex64]) -> Vec<Complex64> {
    let mut acc = scalar_derivative(grid, data, 0, 2);
    for k in 1..grid.dim() {
        for (a, b) in acc.iter_mut().zip(scalar_derivative(grid, data, k, 2)) {
            *a += b;
        }
    }
    acc
}

/// Spin density `S = φ† σ φ` at every point.
pub fn spin_density(f: &SpinorField) -> Vec<[f64; 3]> {
    f.values().iter().map(|&s| pauli::spin_vector(s)).collect()
}

/// Quadrature inner product `⟨f|g⟩`.
pub fn inner(f: &SpinorField, g: &SpinorField) -> Result<Complex64> {
    f.inner(g)
}

/// Leading lower component `χ₀ = (iħ/2mc) σ·(∇ − κ(e/c)A) φ`, summed over the
/// grid axes.
pub fn small_component(
    f: &SpinorField,
    p: &PhysicalParams,
    gauge: Option<&GaugePotential>,
) -> Result<SpinorField> {
    small_component_from_gradient(f, &gradient(f), p, gauge)
}

pub(crate) fn small_component_from_gradient(
    f: &SpinorField,
    grad: &[SpinorField],
    p: &PhysicalParams,
    gauge: Option<&GaugePotential>,
) -> Result<SpinorField> {
    let grid = f.grid();
    if let Some(a) = gauge {
        grid.ensure_same(a.grid())?;
    }
    let prefactor = Complex64::new(0.0, p.hbar / (2.0 * p.m * p.c));
    let axes = grid.cartesian_axes();
    let values = (0..grid.len())
        .map(|i| {
            let phi = f.values()[i];
            let mut acc = Spinor::ZERO;
            for (k, &cart) in axes.iter().enumerate() {
                let mut d = grad[k].values()[i];
                if let Some(a) = gauge {
                    let ak = a.values()[i][cart];
                    if ak != 0.0 {
                        d = d - phi * (COVARIANT_COUPLING * (p.e / p.c * ak));
                    }
                }
                acc += pauli::apply(cart, d);
            }
            acc * prefactor
        })
        .collect();
    Ok(SpinorField::from_parts(grid.clone(), values))
}
