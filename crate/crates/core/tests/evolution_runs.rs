use nlsp_core::evolution::{
    evolve, evolve_outcome, galilean_boost, linear_energy, momentum_expectation, EvolutionConfig, Integrator, Observers,
    Scheme,
};
use nlsp_core::field::Spinor;
use nlsp_core::spectra::{make_eigenstate, AnalyticState, Family};
use nlsp_core::{Boundary, Error, GridSpec, NonlinearityKind, PhysicalParams, RegularizationMode, SpinorField};
use num_complex::Complex64;
use std::f64::consts::PI;

fn box_field(quanta: Vec<u32>, grid: &GridSpec) -> SpinorField {
    let s = AnalyticState::new(Family::Box, quanta, Spinor::real(1.0, 0.0)).unwrap();
    make_eigenstate(&s, grid).unwrap()
}

// Gaussian on a constant background so that |φ|² stays well away from zero.
fn gaussian(grid: &GridSpec, x0: f64) -> SpinorField {
    SpinorField::from_fn(grid.clone(), |x| {
        let g = (-0.5 * (x[0] - x0).powi(2)).exp() + 0.2;
        Spinor::new(Complex64::new(g, 0.0), Complex64::new(0.0, 0.4 * (-0.5 * (x[0] - x0 - 0.5).powi(2)).exp()))
    })
    .unwrap()
}

fn config(dt: f64, steps: usize, kind: NonlinearityKind) -> EvolutionConfig {
    let mut c = EvolutionConfig::new(dt, steps, kind);
    c.observers = Observers { norm: true, energy: false, max_im_f: false, node_positions: false };
    c.observer_stride = steps.max(1);
    c
}

fn phase_overlap(a: &SpinorField, b: &SpinorField, theta: f64) -> f64 {
    (a.inner(b).unwrap() * Complex64::from_polar(1.0, theta)).re / (a.norm_sqr() * b.norm_sqr()).sqrt()
}

#[test]
fn linear_box_state_only_gains_a_phase() {
    let grid = GridSpec::line(1024, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![2], &grid);
    let p = PhysicalParams::default().with_epsilon(0.0);
    for scheme in [Scheme::StrangSplit, Scheme::CrankNicolsonFull] {
        let mut cfg = config(1e-4, 1000, NonlinearityKind::F1);
        cfg.scheme = scheme;
        let (f, _) = evolve(&f0, &cfg, &p).unwrap();
        let fid = phase_overlap(&f0, &f, 2.0 * PI * PI * 0.1);
        assert!(fid >= 1.0 - 1e-6, "{} {fid}", scheme.label());
    }
}

#[test]
fn two_dimensional_box_state() {
    let grid = GridSpec::new(vec![96, 80], vec![1.0, 1.2], Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![2, 1], &grid);
    let p = PhysicalParams::default().with_epsilon(0.0);
    let e = 0.5 * ((2.0 * PI).powi(2) + (PI / 1.2).powi(2));
    for scheme in [Scheme::StrangSplit, Scheme::CrankNicolsonFull] {
        let mut cfg = config(1e-3, 50, NonlinearityKind::RatioY);
        cfg.scheme = scheme;
        let (f, log) = evolve(&f0, &cfg, &p).unwrap();
        assert!(phase_overlap(&f0, &f, e * 0.05) >= 1.0 - 1e-5, "{}", scheme.label());
        assert!(log.norm_drift().unwrap() < 1e-10);
    }
}

#[test]
fn time_only_background_is_a_phase_shift() {
    let grid = GridSpec::line(512, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![3], &grid);
    let p = PhysicalParams::default();
    let kind = NonlinearityKind::F3 { a0: 2.0, a: [0.0; 3] };
    for scheme in [Scheme::StrangSplit, Scheme::CrankNicolsonFull] {
        let mut cfg = config(1e-4, 300, kind);
        cfg.scheme = scheme;
        let (nl, _) = evolve(&f0, &cfg, &p).unwrap();
        let (lin, _) = evolve(&f0, &cfg, &p.with_epsilon(0.0)).unwrap();
        let t = 0.03;
        assert!(phase_overlap(&lin, &nl, -p.epsilon * p.c * 2.0 * t) >= 1.0 - 1e-6);
    }
}

#[test]
fn per_step_norm_drift_is_tiny() {
    let grid = GridSpec::line(513, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![1], &grid);
    let p = PhysicalParams::default();
    for kind in [NonlinearityKind::F1, NonlinearityKind::F4 { a0: 0.3, a: [0.0, 0.0, 1.0] }] {
        for scheme in [Scheme::StrangSplit, Scheme::CrankNicolsonFull] {
            let mut cfg = config(1e-4, 20, kind);
            cfg.scheme = scheme;
            cfg.observer_stride = 1;
            let (_, log) = evolve(&f0, &cfg, &p).unwrap();
            for w in log.samples.windows(2) {
                let (a, b) = (w[0].norm2.unwrap(), w[1].norm2.unwrap());
                assert!(((b - a) / a).abs() <= 1e-10, "{} {}", kind.label(), scheme.label());
            }
        }
    }
}

#[test]
fn norm_constant_over_ten_thousand_steps() {
    let grid = GridSpec::line(256, 10.0, Boundary::Periodic).unwrap().centred();
    let f0 = gaussian(&grid, 0.0);
    let mut cfg = config(1e-4, 10_000, NonlinearityKind::F1);
    cfg.observer_stride = 500;
    let (_, log) = evolve(&f0, &cfg, &PhysicalParams::default()).unwrap();
    assert_eq!(log.samples.len(), 21);
    assert!(log.norm_drift().unwrap() <= 1e-8);
}

#[test]
fn lagged_time_derivative_run() {
    let grid = GridSpec::line(256, 10.0, Boundary::Periodic).unwrap().centred();
    let f0 = gaussian(&grid, 0.3);
    let p = PhysicalParams { delta: 5e-3, ..PhysicalParams::default() };
    for scheme in [Scheme::StrangSplit, Scheme::CrankNicolsonFull] {
        let mut cfg = config(1e-4, 200, NonlinearityKind::F2_DEFAULT);
        cfg.scheme = scheme;
        cfg.observers.energy = true;
        cfg.observers.max_im_f = true;
        cfg.observer_stride = 50;
        let (_, log) = evolve(&f0, &cfg, &p).unwrap();
        assert!(log.norm_drift().unwrap() <= 1e-10);
        assert!(log.samples.iter().all(|s| s.energy.unwrap().is_finite()));
    }
}

#[test]
fn zero_steps_return_the_input() {
    let grid = GridSpec::line(65, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![2], &grid);
    let (f, log) = evolve(&f0, &config(1e-3, 0, NonlinearityKind::F1), &PhysicalParams::default()).unwrap();
    assert_eq!(f, f0);
    assert_eq!(log.samples.len(), 1);
    assert_eq!(log.samples[0].time, 0.0);
}

#[test]
fn sample_count_follows_stride() {
    let grid = GridSpec::line(65, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![1], &grid);
    let mut cfg = config(1e-4, 25, NonlinearityKind::F1);
    cfg.observer_stride = 10;
    cfg.observers = Observers { norm: true, energy: true, max_im_f: true, node_positions: true };
    let (_, log) = evolve(&f0, &cfg, &PhysicalParams::default()).unwrap();
    assert_eq!(log.samples.len(), 25 / 10 + 1);
    assert_eq!(log.samples.iter().map(|s| s.step).collect::<Vec<_>>(), vec![0, 10, 20]);
    assert!(log.samples.iter().all(|s| s.nodes.is_empty() && s.max_im_f.unwrap() < 1e-8));
}

#[test]
fn node_observer_tracks_box_nodes() {
    let grid = GridSpec::line(256, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![3], &grid);
    let mut cfg = config(1e-4, 10, NonlinearityKind::F1);
    cfg.observers.node_positions = true;
    cfg.observer_stride = 5;
    let (_, log) = evolve(&f0, &cfg, &PhysicalParams::default().with_epsilon(0.0)).unwrap();
    for s in &log.samples {
        assert_eq!(s.nodes.len(), 2);
        assert!((s.nodes[0] - 1.0 / 3.0).abs() < 1e-3 && (s.nodes[1] - 2.0 / 3.0).abs() < 1e-3);
    }
    let g2 = GridSpec::new(vec![8, 8], vec![1.0, 1.0], Boundary::Dirichlet).unwrap();
    assert!(cfg.validate(&g2).is_err());
}

#[test]
fn flow_is_scale_equivariant() {
    let grid = GridSpec::line(256, 10.0, Boundary::Periodic).unwrap().centred();
    let f0 = gaussian(&grid, -0.4);
    let p = PhysicalParams::default();
    let lambda = Complex64::from_polar(7.0, -1.1);
    for kind in [NonlinearityKind::F1, NonlinearityKind::CompositeW, NonlinearityKind::F4 { a0: 1.0, a: [0.0; 3] }] {
        let cfg = config(1e-4, 50, kind);
        let (a, _) = evolve(&f0.scaled(lambda), &cfg, &p).unwrap();
        let (b, _) = evolve(&f0, &cfg, &p).unwrap();
        let b = b.scaled(lambda);
        assert!(a.max_distance(&b).unwrap() <= 1e-10 * b.max_density().sqrt(), "{}", kind.label());
    }
}

#[test]
fn deviation_from_linear_flow_is_linear_in_epsilon() {
    let grid = GridSpec::line(256, 10.0, Boundary::Periodic).unwrap().centred();
    let f0 = gaussian(&grid, 0.0);
    let p = PhysicalParams::default();
    let cfg = config(1e-3, 200, NonlinearityKind::F1);
    let (lin, _) = evolve(&f0, &cfg, &p.with_epsilon(0.0)).unwrap();
    let eps = [1e-5, 1e-4, 1e-3];
    let dist: Vec<f64> = eps
        .iter()
        .map(|&e| evolve(&f0, &cfg, &p.with_epsilon(e)).unwrap().0.max_distance(&lin).unwrap())
        .collect();
    let x: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let y: Vec<f64> = dist.iter().map(|d| d.ln()).collect();
    let slope = nlsp_core::spectra::fit_slope(&x, &y);
    assert!((slope - 1.0).abs() <= 0.1, "slope {slope}");
}

#[test]
fn unregularised_node_on_grid_aborts_with_location() {
    let grid = GridSpec::line(1025, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![2], &grid);
    let mut cfg = config(1e-4, 10, NonlinearityKind::F1);
    cfg.mode = RegularizationMode::Unregularized;
    let err = evolve(&f0, &cfg, &PhysicalParams::default()).unwrap_err();
    match err {
        Error::Singular { points, positions } => {
            assert_eq!(points, vec![512]);
            assert!((positions[0][0] - 0.5).abs() < 1e-15);
        }
        other => panic!("unexpected {other:?}"),
    }
    let out = evolve_outcome(&f0, &cfg, &PhysicalParams::default()).unwrap();
    assert_eq!(out.log.samples.len(), 1);
    assert!(out.error.is_some());
    assert_eq!(out.field, f0);
}

#[test]
fn fixed_point_failure_reports_residuals() {
    let grid = GridSpec::line(128, 10.0, Boundary::Periodic).unwrap().centred();
    let f0 = gaussian(&grid, 0.0);
    let p = PhysicalParams::default().with_epsilon(50.0);
    let mut cfg = config(0.5, 1, NonlinearityKind::CompositeW);
    cfg.scheme = Scheme::CrankNicolsonFull;
    match evolve(&f0, &cfg, &p).unwrap_err() {
        Error::StepFailure { step, residuals, .. } => {
            assert_eq!(step, 0);
            assert_eq!(residuals.len(), 25);
            assert!(residuals.last().unwrap() > &1e-10);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn integrator_rejects_bad_settings() {
    let grid = GridSpec::line(65, 1.0, Boundary::Dirichlet).unwrap();
    let f0 = box_field(vec![1], &grid);
    let p = PhysicalParams::default();
    assert!(Integrator::new(f0.clone(), config(0.0, 1, NonlinearityKind::F1), p).is_err());
    let mut cfg = config(1e-3, 1, NonlinearityKind::F1);
    cfg.observer_stride = 0;
    assert!(Integrator::new(f0.clone(), cfg, p).is_err());
    let low_c = p.with_c(0.4);
    assert!(matches!(
        Integrator::new(f0, config(1e-3, 1, NonlinearityKind::F1), low_c),
        Err(Error::Config(_))
    ));
}

#[test]
fn boost_gives_momentum_and_identity() {
    let grid = GridSpec::line(256, 20.0, Boundary::Periodic).unwrap().centred();
    let f0 = SpinorField::from_fn(grid.clone(), |x| Spinor::real((-0.5 * x[0] * x[0]).exp(), 0.0)).unwrap();
    let p = PhysicalParams::default();
    assert!(momentum_expectation(&f0, &p).unwrap()[0].abs() < 1e-12);
    let v = 2.0 * PI * 3.0 / 20.0;
    let b = galilean_boost(&f0, &[v], 0.7, &p).unwrap();
    assert!((momentum_expectation(&b, &p).unwrap()[0] - p.m * v).abs() <= 1e-8);
    assert!((b.norm_sqr() - f0.norm_sqr()).abs() < 1e-12);
    assert_eq!(galilean_boost(&f0, &[0.0], 3.0, &p).unwrap(), f0);
    let d = GridSpec::line(64, 1.0, Boundary::Dirichlet).unwrap();
    let fd = box_field(vec![1], &d);
    assert!(matches!(galilean_boost(&fd, &[0.0], 0.0, &p), Err(Error::UnsupportedBoundary(_))));
    assert!(matches!(galilean_boost(&f0, &[0.1], 0.0, &p), Err(Error::Config(_))));
    assert!(matches!(galilean_boost(&f0, &[v], 100.0, &p), Err(Error::Config(_))));
}

#[test]
fn boost_translates_band_limited_fields_exactly() {
    let grid = GridSpec::line(64, 1.0, Boundary::Periodic).unwrap();
    let f0 = SpinorField::from_fn(grid.clone(), |x| Spinor::real((2.0 * PI * x[0]).cos(), (4.0 * PI * x[0]).sin())).unwrap();
    let p = PhysicalParams::default();
    let v = 2.0 * PI;
    let t = 0.013;
    let b = galilean_boost(&f0, &[v], t, &p).unwrap();
    for (i, s) in b.values().iter().enumerate() {
        let x = grid.coordinate(0, i);
        let phase = Complex64::from_polar(1.0, v * x - 0.5 * v * v * t);
        let y = x - v * t;
        let want = Spinor::real((2.0 * PI * y).cos(), (4.0 * PI * y).sin()) * phase;
        assert!((*s - want).norm_sqr().sqrt() < 1e-12);
    }
}

#[test]
fn linear_energy_of_box_state() {
    let grid = GridSpec::line(1025, 1.0, Boundary::Dirichlet).unwrap();
    let f = box_field(vec![2], &grid);
    let e = linear_energy(&f, &PhysicalParams::default()).unwrap();
    assert!((e - 2.0 * PI * PI).abs() < 1e-3);
}
