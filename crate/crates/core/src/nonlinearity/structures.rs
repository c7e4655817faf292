use super::{DenominatorReport, NonlinearityKind, PointField};
use crate::error::{Error, Result};
use crate::field::{gradient, laplacian, pauli, SpinorField};
use num_complex::Complex64;

/// Gradient and Laplacian of a field, computed once per evaluation.
pub(crate) struct Derivatives {
    pub grad: Vec<SpinorField>,
    lap: Option<SpinorField>,
}

impl Derivatives {
    pub fn new(f: &SpinorField) -> Self {
        Derivatives { grad: gradient(f), lap: None }
    }

    pub fn laplacian(&mut self, f: &SpinorField) -> &SpinorField {
        self.lap.get_or_insert_with(|| laplacian(f))
    }
}

/// `numerator / D` with singular denominators flagged.
pub(crate) fn divide(numerator: Vec<Complex64>, d: &DenominatorReport) -> PointField {
    let mut flagged = d.singular_points();
    let mut values = numerator;
    for &i in &flagged {
        values[i] = Complex64::new(f64::NAN, f64::NAN);
    }
    let mut extra = Vec::new();
    for (i, (v, den)) in values.iter_mut().zip(&d.values).enumerate() {
        if v.is_finite() {
            *v /= *den;
            if !v.is_finite() {
                *v = Complex64::new(f64::NAN, f64::NAN);
                extra.push(i);
            }
        }
    }
    if !extra.is_empty() {
        flagged.extend(extra);
        flagged.sort_unstable();
        flagged.dedup();
    }
    PointField { values, flagged }
}

/// `φ† σ·∇φ`
pub(crate) fn spin_gradient_numerator(f: &SpinorField, grad: &[SpinorField]) -> Vec<Complex64> {
    let axes = f.grid().cartesian_axes();
    (0..f.len())
        .map(|i| {
            let phi = f.values()[i];
            axes.iter()
                .enumerate()
                .map(|(k, &c)| phi.dot(&pauli::apply(c, grad[k].values()[i])))
                .sum()
        })
        .collect()
}

/// `(∇φ†)·(∇φ)`
pub(crate) fn gradient_square(grad: &[SpinorField]) -> Vec<Complex64> {
    let n = grad[0].len();
    (0..n)
        .map(|i| Complex64::new(grad.iter().map(|g| g.values()[i].norm_sqr()).sum(), 0.0))
        .collect()
}

pub(crate) fn ratio_with(
    kind: &NonlinearityKind,
    f: &SpinorField,
    derivs: &mut Derivatives,
    d: &DenominatorReport,
) -> Result<PointField> {
    let numerator = match kind {
        NonlinearityKind::RatioX => spin_gradient_numerator(f, &derivs.grad),
        NonlinearityKind::RatioY => gradient_square(&derivs.grad),
        NonlinearityKind::RatioZ => {
            let lap = derivs.laplacian(f);
            f.values().iter().zip(lap.values()).map(|(a, b)| a.dot(b)).collect()
        }
        other => {
            return Err(Error::config(format!("{} is not a ratio structure", other.label())));
        }
    };
    Ok(divide(numerator, d))
}

pub(crate) fn composite_with(
    kind: &NonlinearityKind,
    f: &SpinorField,
    derivs: &mut Derivatives,
    d: &DenominatorReport,
) -> Result<PointField> {
    let y = ratio_with(&NonlinearityKind::RatioY, f, derivs, d)?;
    match kind {
        NonlinearityKind::CompositeV => Ok(y.mul(&y)),
        NonlinearityKind::CompositeW => {
            let z = ratio_with(&NonlinearityKind::RatioZ, f, derivs, d)?;
            Ok(y.mul(&z))
        }
        other => Err(Error::config(format!("{} is not a composite structure", other.label()))),
    }
}

fn check_report(f: &SpinorField, d: &DenominatorReport) -> Result<()> {
    if d.values.len() != f.len() {
        return Err(Error::config(format!(
            "denominator has {} points, field has {}",
            d.values.len(),
            f.len()
        )));
    }
    Ok(())
}

/// X, Y or Z of `f` over the supplied denominator.
pub fn ratio_structure(kind: &NonlinearityKind, f: &SpinorField, d: &DenominatorReport) -> Result<PointField> {
    check_report(f, d)?;
    ratio_with(kind, f, &mut Derivatives::new(f), d)
}

/// V = Y² or W = YZ of `f` over the supplied denominator.
pub fn composite(kind: &NonlinearityKind, f: &SpinorField, d: &DenominatorReport) -> Result<PointField> {
    check_report(f, d)?;
    composite_with(kind, f, &mut Derivatives::new(f), d)
}
