//! The Pauli matrices and their action on two-component spinors.

use super::spinor::Spinor;
use num_complex::Complex64;

const O: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);
const MINUS_ONE: Complex64 = Complex64::new(-1.0, 0.0);

/// σ₁, σ₂, σ₃ as row-major 2×2 matrices.
pub const SIGMA: [[[Complex64; 2]; 2]; 3] = [
    [[O, ONE], [ONE, O]],
    [[O, MINUS_I], [I, O]],
    [[ONE, O], [O, MINUS_ONE]],
];

/// `σ_k · s` for Cartesian component `k`.
pub fn apply(k: usize, s: Spinor) -> Spinor {
    match k {
        0 => Spinor::new(s.down, s.up),
        1 => Spinor::new(-I * s.down, I * s.up),
        2 => Spinor::new(s.up, -s.down),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// `(a · σ) s` for a real 3-vector `a`.
pub fn apply_vector(a: [f64; 3], s: Spinor) -> Spinor {
    (0..3).fold(Spinor::ZERO, |acc, k| {
        if a[k] == 0.0 {
            acc
        } else {
            acc + apply(k, s) * a[k]
        }
    })
}

/// Spin density `s† σ s`, real by hermiticity.
pub fn spin_vector(s: Spinor) -> [f64; 3] {
    let cross = s.up.conj() * s.down;
    [
        2.0 * cross.re,
        2.0 * cross.im,
        s.up.norm_sqr() - s.down.norm_sqr(),
    ]
}
