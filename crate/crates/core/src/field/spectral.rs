//! Fourier multipliers applied line by line along one grid axis.

use super::grid::GridSpec;
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Angular wavenumbers in FFT order for `n` samples over a period `length`.
/// The Nyquist entry (even `n`) is reported as positive.
pub fn wavenumbers(n: usize, length: f64) -> Vec<f64> {
    let dk = 2.0 * std::f64::consts::PI / length;
    (0..n)
        .map(|j| {
            let signed = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            signed * dk
        })
        .collect()
}

/// True for the unpaired Nyquist mode of an even-length transform.
pub fn is_nyquist(j: usize, n: usize) -> bool {
    n.is_multiple_of(2) && j == n / 2
}

/// Multiply every line along `axis` by `multiplier[j]` in Fourier space.
pub fn apply_multiplier(grid: &GridSpec, data: &mut [Complex64], axis: usize, multiplier: &[Complex64]) {
    let n = grid.points()[axis];
    debug_assert_eq!(multiplier.len(), n);
    let stride = grid.stride(axis);
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let scale = 1.0 / n as f64;
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for start in grid.line_starts(axis) {
        for (i, v) in line.iter_mut().enumerate() {
            *v = data[start + i * stride];
        }
        forward.process(&mut line);
        for (v, m) in line.iter_mut().zip(multiplier) {
            *v *= m * scale;
        }
        inverse.process(&mut line);
        for (i, v) in line.iter().enumerate() {
            data[start + i * stride] = *v;
        }
    }
}

/// Fourier multiplier for `d/dx` (Nyquist mode dropped).
pub fn derivative_multiplier(n: usize, length: f64) -> Vec<Complex64> {
    wavenumbers(n, length)
        .into_iter()
        .enumerate()
        .map(|(j, k)| if is_nyquist(j, n) { Complex64::new(0.0, 0.0) } else { Complex64::new(0.0, k) })
        .collect()
}

/// Fourier multiplier for `d²/dx²`.
pub fn second_derivative_multiplier(n: usize, length: f64) -> Vec<Complex64> {
    wavenumbers(n, length)
        .into_iter()
        .map(|k| Complex64::new(-k * k, 0.0))
        .collect()
}

/// Fourier multiplier for the translation `g(x) -> g(x - shift)`.
pub fn translation_multiplier(n: usize, length: f64, shift: f64) -> Vec<Complex64> {
    wavenumbers(n, length)
        .into_iter()
        .enumerate()
        .map(|(j, k)| {
            if is_nyquist(j, n) {
                Complex64::new((k * shift).cos(), 0.0)
            } else {
                Complex64::from_polar(1.0, -k * shift)
            }
        })
        .collect()
}
