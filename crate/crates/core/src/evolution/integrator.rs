use super::boost::linear_energy;
use super::linear::{crank_nicolson_full, LinearPropagator};
use super::{EvolutionConfig, ObservationLog, Sample, Scheme, FIXED_POINT_MAX_ITER, FIXED_POINT_TOL};
use crate::error::{Error, Result};
use crate::field::{PhysicalParams, SpinorField};
use crate::nonlinearity::{
    apply_nonlinear_term, eval_f, kinetic_factor, nonlinear_potential, Potential, TimeInput,
};
use crate::spectra::node_scan;
use num_complex::Complex64;

/// Stateful stepper. Keeps the previous accepted field so that nonlinearities
/// with a time derivative see the backward difference.
pub struct Integrator {
    cfg: EvolutionConfig,
    p: PhysicalParams,
    current: SpinorField,
    previous: Option<SpinorField>,
    initial_energy: f64,
    kinetic: f64,
    propagator: Option<LinearPropagator>,
    step: usize,
}

impl Integrator {
    pub fn new(f: SpinorField, cfg: EvolutionConfig, p: PhysicalParams) -> Result<Self> {
        p.validate_for(f.grid())?;
        cfg.validate(f.grid())?;
        let current = f;
        let initial_energy = linear_energy(&current, &p)?;
        let kinetic = kinetic_factor(&cfg.kind, &p);
        let propagator = match cfg.scheme {
            Scheme::StrangSplit => Some(LinearPropagator::new(current.grid(), &p, kinetic, cfg.dt)),
            Scheme::CrankNicolsonFull => None,
        };
        Ok(Integrator { cfg, p, current, previous: None, initial_energy, kinetic, propagator, step: 0 })
    }

    pub fn field(&self) -> &SpinorField {
        &self.current
    }

    pub fn into_field(self) -> SpinorField {
        self.current
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.cfg.dt
    }

    fn time_derivative(&self) -> Option<SpinorField> {
        let prev = self.previous.as_ref()?;
        let diff = self.current.add_scaled(Complex64::new(-1.0, 0.0), prev).ok()?;
        Some(diff.scaled(Complex64::new(1.0 / self.cfg.dt, 0.0)))
    }

    fn with_time<T>(&self, f: impl FnOnce(Option<TimeInput<'_>>) -> T) -> T {
        if !self.cfg.kind.needs_time_input() {
            return f(None);
        }
        match self.time_derivative() {
            Some(d) => f(Some(TimeInput::Derivative(&d))),
            None => f(Some(TimeInput::StationaryEnergy(self.initial_energy))),
        }
    }

    /// Nonlinear potential of `f`; any singular point away from a wall aborts.
    fn potential(&self, f: &SpinorField) -> Result<Potential> {
        let pot = self.with_time(|t| nonlinear_potential(&self.cfg.kind, f, &self.p, self.cfg.mode, t))?;
        let grid = f.grid();
        let bad: Vec<usize> = pot.flagged.iter().copied().filter(|&i| !grid.is_wall(i)).collect();
        if !bad.is_empty() {
            let positions = bad.iter().map(|&i| grid.position(i)).collect();
            return Err(Error::Singular { points: bad, positions });
        }
        Ok(pot)
    }

    fn phase(&self, f: &mut SpinorField, v: &[f64], duration: f64) {
        let hbar = self.p.hbar;
        for (s, &u) in f.values_mut().iter_mut().zip(v) {
            if u != 0.0 {
                *s = *s * Complex64::from_polar(1.0, -u * duration / hbar);
            }
        }
    }

    /// Advance one step. The field is left unchanged on error.
    pub fn step(&mut self) -> Result<()> {
        let dt = self.cfg.dt;
        let next = match self.cfg.scheme {
            Scheme::StrangSplit => {
                let mut f = self.current.clone();
                let v = self.potential(&f)?;
                self.phase(&mut f, &v.values, 0.5 * dt);
                self.propagator.as_ref().expect("strang propagator").apply(&mut f);
                let v = self.potential(&f)?;
                self.phase(&mut f, &v.values, 0.5 * dt);
                f
            }
            Scheme::CrankNicolsonFull => self.implicit_step()?,
        };
        let next = self.check_finite(next)?;
        self.previous = Some(std::mem::replace(&mut self.current, next));
        self.step += 1;
        Ok(())
    }

    fn check_finite(&self, f: SpinorField) -> Result<SpinorField> {
        if let Some(i) = f.values().iter().position(|s| !s.is_finite()) {
            return Err(Error::StepFailure {
                step: self.step,
                reason: format!("non-finite value at point {i}"),
                residuals: Vec::new(),
            });
        }
        Ok(f)
    }

    fn implicit_step(&self) -> Result<SpinorField> {
        let dt = self.cfg.dt;
        let start = &self.current;
        let mut guess = start.clone();
        let mut residuals = Vec::new();
        for _ in 0..FIXED_POINT_MAX_ITER {
            let mid = start.add_scaled(Complex64::new(1.0, 0.0), &guess)?.scaled(Complex64::new(0.5, 0.0));
            let v = self.potential(&mid)?;
            let next = crank_nicolson_full(start, &v.values, &self.p, self.kinetic, dt).map_err(|e| match e {
                Error::StepFailure { reason, residuals, .. } => Error::StepFailure { step: self.step, reason, residuals },
                other => other,
            })?;
            let scale = next.max_density().sqrt().max(f64::MIN_POSITIVE);
            let r = next.max_distance(&guess)? / scale;
            residuals.push(r);
            guess = next;
            if r <= FIXED_POINT_TOL {
                return Ok(guess);
            }
        }
        Err(Error::StepFailure {
            step: self.step,
            reason: format!("fixed-point iteration did not reach {FIXED_POINT_TOL:e} in {FIXED_POINT_MAX_ITER} iterations"),
            residuals,
        })
    }

    /// Record the observers selected in the configuration.
    pub fn observe(&self) -> Result<Sample> {
        let obs = self.cfg.observers;
        let f = &self.current;
        let norm2 = obs.norm.then(|| f.norm_sqr());
        let energy = if obs.energy { Some(self.energy()?) } else { None };
        let max_im_f = if obs.max_im_f {
            let fnr = self.with_time(|t| eval_f(&self.cfg.kind, f, &self.p, self.cfg.mode, t))?;
            Some(fnr.max_imag())
        } else {
            None
        };
        let mut nodes: Vec<f64> = if obs.node_positions {
            node_scan(f).into_iter().map(|n| n.position[0]).collect()
        } else {
            Vec::new()
        };
        nodes.sort_by(|a, b| a.total_cmp(b));
        Ok(Sample { step: self.step, time: self.time(), norm2, energy, max_im_f, nodes })
    }

    /// `⟨φ|H|φ⟩/⟨φ|φ⟩` with the kinetic factor and the nonlinear term.
    pub fn energy(&self) -> Result<f64> {
        let f = &self.current;
        let kin = linear_energy(f, &self.p)?;
        let term = self.with_time(|t| apply_nonlinear_term(&self.cfg.kind, f, &self.p, self.cfg.mode, t))?;
        let nl = f.inner(&term.term)?.re / f.norm_sqr();
        Ok(kin + nl)
    }
}

/// Final field, the samples gathered so far and the error that stopped the
/// run, if any.
#[derive(Debug, Clone)]
pub struct EvolutionOutcome {
    pub field: SpinorField,
    pub log: ObservationLog,
    pub error: Option<Error>,
}

/// Run `cfg.steps` steps, sampling every `observer_stride` steps. On
/// failure the partial log is kept.
pub fn evolve_outcome(f: &SpinorField, cfg: &EvolutionConfig, p: &PhysicalParams) -> Result<EvolutionOutcome> {
    let mut it = Integrator::new(f.clone(), cfg.clone(), *p)?;
    let mut log = ObservationLog::default();
    log.samples.push(it.observe()?);
    for _ in 0..cfg.steps {
        let result = it.step().and_then(|_| {
            if it.steps_taken() % cfg.observer_stride == 0 {
                log.samples.push(it.observe()?);
            }
            Ok(())
        });
        if let Err(e) = result {
            return Ok(EvolutionOutcome { field: it.into_field(), log, error: Some(e) });
        }
    }
    Ok(EvolutionOutcome { field: it.into_field(), log, error: None })
}

pub fn evolve(f: &SpinorField, cfg: &EvolutionConfig, p: &PhysicalParams) -> Result<(SpinorField, ObservationLog)> {
    let out = evolve_outcome(f, cfg, p)?;
    match out.error {
        Some(e) => Err(e),
        None => Ok((out.field, out.log)),
    }
}
