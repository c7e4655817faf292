use nlsp_core::field::{
    gradient, inner, laplacian, pauli, small_component, spin_density, GaugePotential, Spinor,
};
use nlsp_core::harness::check::random_smooth_field;
use nlsp_core::{Boundary, GridSpec, PhysicalParams, SpinorField};
use num_complex::Complex64;
use std::f64::consts::PI;

fn box_state(n: usize, k: f64) -> SpinorField {
    let g = GridSpec::line(n, 1.0, Boundary::Dirichlet).unwrap();
    SpinorField::from_fn(g, |x| Spinor::real(2f64.sqrt() * (k * PI * x[0]).sin(), 0.0)).unwrap()
}

fn plane_wave(n: usize, k: f64) -> SpinorField {
    let g = GridSpec::line(n, 1.0, Boundary::Periodic).unwrap();
    SpinorField::from_fn(g, |x| Spinor::new(Complex64::from_polar(1.0, k * x[0]), Complex64::new(0.0, 0.0))).unwrap()
}

#[test]
fn gradient_of_periodic_sine() {
    let g = GridSpec::line(512, 1.0, Boundary::Periodic).unwrap();
    let f = SpinorField::from_fn(g.clone(), |x| Spinor::real((2.0 * PI * x[0]).sin(), 0.0)).unwrap();
    let d = &gradient(&f)[0];
    let h = g.spacing(0);
    for (i, s) in d.values().iter().enumerate() {
        let want = 2.0 * PI * (2.0 * PI * g.coordinate(0, i)).cos();
        assert!((s.up.re - want).abs() < 2.0 * (2.0 * PI).powi(3) * h * h);
    }
}

#[test]
fn plane_wave_gradient_error_is_second_order() {
    // Central differences give i sin(kh)/h; the error is k³h²/6 to leading order.
    let k = 2.0 * PI * 4.0;
    let mut errors = Vec::new();
    for n in [256, 512, 1024] {
        let f = plane_wave(n, k);
        let h = f.grid().spacing(0);
        let d = &gradient(&f)[0];
        let err = d
            .values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| (a.up - b.up * Complex64::new(0.0, k)).norm())
            .fold(0.0, f64::max);
        assert!(err <= k.powi(3) * h * h / 6.0 * 1.001, "n={n} err={err}");
        errors.push(err);
    }
    for w in errors.windows(2) {
        let r = w[0] / w[1];
        assert!((r - 4.0).abs() < 0.4, "ratio {r}");
    }
}

#[test]
fn laplacian_plane_wave_is_stencil_eigenvector() {
    let k = 2.0 * PI * 5.0;
    let f = plane_wave(128, k);
    let h = f.grid().spacing(0);
    let lambda = -(2.0 - 2.0 * (k * h).cos()) / (h * h);
    let lap = laplacian(&f);
    for (a, b) in lap.values().iter().zip(f.values()) {
        assert!((a.up - b.up * lambda).norm() < 1e-9 * lambda.abs());
    }
}

#[test]
fn laplacian_of_constant_and_sine() {
    let g = GridSpec::new(vec![9, 11], vec![1.0, 1.5], Boundary::Dirichlet).unwrap();
    let f = SpinorField::from_fn(g, |_| Spinor::real(1.0, -2.0)).unwrap();
    assert!(laplacian(&f).values().iter().all(|s| s.norm_sqr() < 1e-18));

    let g = GridSpec::line(1024, 1.0, Boundary::Periodic).unwrap();
    let f = SpinorField::from_fn(g.clone(), |x| Spinor::real((2.0 * PI * x[0]).sin(), 0.0)).unwrap();
    let lap = laplacian(&f);
    for (i, s) in lap.values().iter().enumerate() {
        let want = -(2.0 * PI).powi(2) * (2.0 * PI * g.coordinate(0, i)).sin();
        assert!((s.up.re - want).abs() < 1e-3);
    }
}

#[test]
fn derivative_errors_fall_fourfold_on_dirichlet_grids() {
    let exact_d1 = |x: f64| 2.0 * PI * (2.0 * PI * x).cos() + 1.0;
    let exact_d2 = |x: f64| -(2.0 * PI).powi(2) * (2.0 * PI * x).sin();
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for n in [129, 257, 513] {
        let g = GridSpec::line(n, 1.0, Boundary::Dirichlet).unwrap();
        let f = SpinorField::from_fn(g.clone(), |x| Spinor::real((2.0 * PI * x[0]).sin() + x[0], 0.0)).unwrap();
        let d1 = &gradient(&f)[0];
        let d2 = laplacian(&f);
        let m1 = (0..n).map(|i| (d1.values()[i].up.re - exact_d1(g.coordinate(0, i))).abs()).fold(0.0, f64::max);
        let m2 = (0..n).map(|i| (d2.values()[i].up.re - exact_d2(g.coordinate(0, i))).abs()).fold(0.0, f64::max);
        e1.push(m1);
        e2.push(m2);
    }
    for e in [&e1, &e2] {
        for w in e.windows(2) {
            let r = w[0] / w[1];
            assert!((r - 4.0).abs() <= 0.4, "ratio {r} in {e:?}");
        }
    }
}

#[test]
fn operators_are_linear() {
    let g = GridSpec::new(vec![16, 12], vec![1.0, 1.3], Boundary::Periodic).unwrap();
    let a = random_smooth_field(&g, 1, 3);
    let b = random_smooth_field(&g, 2, 3);
    let lambda = Complex64::new(0.7, -1.9);
    let combo = a.add_scaled(lambda, &b).unwrap();
    let p = PhysicalParams::default();
    let close = |x: &SpinorField, y: &SpinorField| {
        let scale = y.max_density().sqrt().max(1.0);
        x.max_distance(y).unwrap() <= 1e-12 * scale
    };
    let ga = gradient(&a);
    let gb = gradient(&b);
    for (k, gc) in gradient(&combo).iter().enumerate() {
        assert!(close(gc, &ga[k].add_scaled(lambda, &gb[k]).unwrap()));
    }
    assert!(close(&laplacian(&combo), &laplacian(&a).add_scaled(lambda, &laplacian(&b)).unwrap()));
    let ca = small_component(&a, &p, None).unwrap();
    let cb = small_component(&b, &p, None).unwrap();
    assert!(close(&small_component(&combo, &p, None).unwrap(), &ca.add_scaled(lambda, &cb).unwrap()));
}

#[test]
fn spin_density_examples_and_identity() {
    let g = GridSpec::line(8, 1.0, Boundary::Periodic).unwrap();
    let up = SpinorField::from_fn(g.clone(), |_| Spinor::real(1.0, 0.0)).unwrap();
    assert!(spin_density(&up).iter().all(|s| *s == [0.0, 0.0, 1.0]));
    let r = 0.5f64.sqrt();
    let x = SpinorField::from_fn(g.clone(), |_| Spinor::real(r, r)).unwrap();
    for s in spin_density(&x) {
        assert!((s[0] - 1.0).abs() < 1e-15 && s[1].abs() < 1e-15 && s[2].abs() < 1e-15);
    }
    let f = random_smooth_field(&GridSpec::line(200, 1.0, Boundary::Periodic).unwrap(), 7, 4);
    for (s, phi) in spin_density(&f).iter().zip(f.values()) {
        let ss: f64 = s.iter().map(|v| v * v).sum();
        let rho2 = phi.norm_sqr().powi(2);
        assert!((ss - rho2).abs() <= 1e-12 * rho2);
    }
}

#[test]
fn pauli_algebra() {
    // σᵢσⱼ = δᵢⱼ I + i ε_ijk σₖ, checked on a basis.
    let eps = |i: usize, j: usize, k: usize| -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    };
    for basis in [Spinor::real(1.0, 0.0), Spinor::real(0.0, 1.0)] {
        for i in 0..3 {
            for j in 0..3 {
                let lhs = pauli::apply(i, pauli::apply(j, basis));
                let mut rhs = if i == j { basis } else { Spinor::ZERO };
                for k in 0..3 {
                    rhs = rhs + pauli::apply(k, basis) * Complex64::new(0.0, eps(i, j, k));
                }
                assert!((lhs - rhs).norm_sqr() < 1e-30);
            }
        }
    }
}

#[test]
fn inner_product_of_box_states() {
    let phi1 = box_state(1024, 1.0);
    let phi2 = box_state(1024, 2.0);
    assert!((inner(&phi2, &phi2).unwrap().re - 1.0).abs() <= 1e-6);
    assert!(inner(&phi1, &phi2).unwrap().norm() <= 1e-6);
    let g = GridSpec::line(64, 1.0, Boundary::Periodic).unwrap();
    let a = random_smooth_field(&g, 3, 2);
    let b = random_smooth_field(&g, 4, 2);
    assert_eq!(inner(&a, &b).unwrap(), inner(&b, &a).unwrap().conj());
    assert!(inner(&a, &a).unwrap().re > 0.0);
    let other = random_smooth_field(&GridSpec::line(65, 1.0, Boundary::Periodic).unwrap(), 3, 2);
    assert!(matches!(inner(&a, &other), Err(nlsp_core::Error::Config(_))));
}

#[test]
fn small_component_node_value() {
    let f = box_state(2049, 2.0);
    let p = PhysicalParams::default();
    let chi = small_component(&f, &p, None).unwrap();
    let want = Complex64::new(0.0, -2.0 * 2f64.sqrt() * PI / 20.0);
    assert!((chi.values()[1024].up - want).norm() < 1e-5);
    assert!((want.im + 0.4443).abs() < 1e-4);
}

#[test]
fn small_component_scales_inversely_with_c() {
    let f = box_state(257, 3.0);
    let p = PhysicalParams::default();
    let a = small_component(&f, &p, None).unwrap();
    let b = small_component(&f, &p.with_c(2.0 * p.c), None).unwrap();
    assert_eq!(a.max_density(), 4.0 * b.max_density());
    for (x, y) in a.values().iter().zip(b.values()) { assert_eq!(*x, *y * 2.0); }
    let constant = SpinorField::from_fn(f.grid().clone(), |_| Spinor::real(0.3, 0.4)).unwrap();
    assert!(small_component(&constant, &p, None).unwrap().max_density() < 1e-28);
}

#[test]
fn gauge_small_component_formula() {
    let f = box_state(2049, 2.0);
    let grid = f.grid().clone();
    let p = PhysicalParams { e: 0.8, ..PhysicalParams::default() };
    let a = 2.5;
    let gauge = GaugePotential::uniform(grid.clone(), [0.0, 0.0, a]).unwrap();
    let chi = small_component(&f, &p, Some(&gauge)).unwrap();
    let d = &gradient(&f)[0];
    let pre = (p.hbar / (2.0 * p.m * p.c)).powi(2);
    for i in (1..2048).step_by(97) {
        let g = f.values()[i].up.re;
        let dg = d.values()[i].up.re;
        let ec = p.e / p.c;
        let want = pre * (dg * dg - 2.0 * ec * a * g * dg + ec * ec * a * a * g * g);
        assert!((chi.values()[i].norm_sqr() - want).abs() <= 1e-12 * want.max(1e-3));
    }
    let other = GaugePotential::uniform(GridSpec::line(33, 1.0, Boundary::Dirichlet).unwrap(), [0.0; 3]).unwrap();
    assert!(small_component(&f, &p, Some(&other)).is_err());
}
