//! Run configuration: a TOML document with fixed sections. Every key has a
//! default and unknown keys are rejected.

use crate::error::{Error, Result};
use crate::evolution::{EvolutionConfig, Observers, Scheme};
use crate::field::{Boundary, DerivativeScheme, GridSpec, PhysicalParams, Spinor};
use crate::nonlinearity::{F2TermReading, NonlinearityKind, RegularizationMode, DEFAULT_FLOOR_TAU};
use crate::spectra::{AnalyticState, Family};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub grid: GridSection,
    pub physics: PhysicsSection,
    pub nonlinearity: NonlinearitySection,
    pub state: StateSection,
    pub evolution: EvolutionSection,
    pub study: StudySection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub dim: usize,
    /// Points per axis, same on every axis.
    pub n: usize,
    /// Length of every axis.
    pub length: f64,
    /// `dirichlet` or `periodic`.
    pub bc: String,
    /// `central` or `spectral`.
    pub derivative: String,
    /// Put the origin at the centre of the box instead of a corner.
    pub centred: bool,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            dim: 1,
            n: 1025,
            length: 1.0,
            bc: "dirichlet".into(),
            derivative: "central".into(),
            centred: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicsSection {
    pub hbar: f64,
    pub m: f64,
    pub c: f64,
    pub e: f64,
    pub epsilon: f64,
    pub delta: f64,
}

impl Default for PhysicsSection {
    fn default() -> Self {
        let p = PhysicalParams::default();
        PhysicsSection { hbar: p.hbar, m: p.m, c: p.c, e: p.e, epsilon: p.epsilon, delta: p.delta }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NonlinearitySection {
    /// `f1`, `f2`, `f3`, `f4`, `x`, `y`, `z`, `v` or `w`.
    pub kind: String,
    #[serde(rename = "A0")]
    pub a0: f64,
    #[serde(rename = "A")]
    pub a: [f64; 3],
    /// `unregularized`, `small_component` or `small_component_floored`.
    pub regularization: String,
    pub floor_tau: f64,
    /// `laplacian_of_density` or `conjugate_laplacian_times_field`.
    pub f2_term_reading: String,
}

impl Default for NonlinearitySection {
    fn default() -> Self {
        NonlinearitySection {
            kind: "f1".into(),
            a0: 0.0,
            a: [0.0; 3],
            regularization: "small_component".into(),
            floor_tau: DEFAULT_FLOOR_TAU,
            f2_term_reading: "laplacian_of_density".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StateSection {
    /// `box` or `harmonic`.
    pub family: String,
    /// Quantum numbers, one per axis.
    pub n: Vec<u32>,
    /// `[re_up, im_up, re_down, im_down]`, normalised on use.
    pub spin: [f64; 4],
}

impl Default for StateSection {
    fn default() -> Self {
        StateSection { family: "box".into(), n: vec![2], spin: [1.0, 0.0, 0.0, 0.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolutionSection {
    pub dt: f64,
    pub steps: usize,
    /// `strang_split` or `crank_nicolson_full`.
    pub scheme: String,
    pub observer_stride: usize,
    /// Any of `norm`, `energy`, `max_im_f`, `node_positions`.
    pub observers: Vec<String>,
}

impl Default for EvolutionSection {
    fn default() -> Self {
        EvolutionSection {
            dt: 1e-4,
            steps: 1000,
            scheme: "strang_split".into(),
            observer_stride: 10,
            observers: vec!["norm".into(), "energy".into(), "max_im_f".into()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StudySection {
    pub levels: Vec<usize>,
}

impl Default for StudySection {
    fn default() -> Self {
        StudySection { levels: vec![256, 512, 1024, 2048] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
    /// Significant digits of every float written.
    pub precision: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: "out".into(), precision: 17 }
    }
}

fn unknown(key: &str, value: &str, allowed: &[&str]) -> Error {
    Error::config(format!("{key} = {value:?} is not one of {}", allowed.join(", ")))
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::config(e.to_string()))
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration is always serialisable")
    }

    pub fn grid(&self) -> Result<GridSpec> {
        let g = &self.grid;
        let bc = match g.bc.as_str() {
            "dirichlet" => Boundary::Dirichlet,
            "periodic" => Boundary::Periodic,
            other => return Err(unknown("grid.bc", other, &["dirichlet", "periodic"])),
        };
        let scheme = match g.derivative.as_str() {
            "central" => DerivativeScheme::Central,
            "spectral" => DerivativeScheme::Spectral,
            other => return Err(unknown("grid.derivative", other, &["central", "spectral"])),
        };
        let mut grid = GridSpec::new(vec![g.n; g.dim], vec![g.length; g.dim], bc)?.with_scheme(scheme)?;
        if g.centred {
            grid = grid.centred();
        }
        Ok(grid)
    }

    pub fn params(&self) -> Result<PhysicalParams> {
        let s = &self.physics;
        let p = PhysicalParams { hbar: s.hbar, m: s.m, c: s.c, e: s.e, epsilon: s.epsilon, delta: s.delta };
        p.validate()?;
        Ok(p)
    }

    pub fn kind(&self) -> Result<NonlinearityKind> {
        let s = &self.nonlinearity;
        let reading = match s.f2_term_reading.as_str() {
            "laplacian_of_density" => F2TermReading::LaplacianOfDensity,
            "conjugate_laplacian_times_field" => F2TermReading::ConjugateLaplacianTimesField,
            other => {
                return Err(unknown(
                    "nonlinearity.f2_term_reading",
                    other,
                    &["laplacian_of_density", "conjugate_laplacian_times_field"],
                ))
            }
        };
        Ok(match s.kind.as_str() {
            "f1" => NonlinearityKind::F1,
            "f2" => NonlinearityKind::F2 { reading },
            "f3" => NonlinearityKind::F3 { a0: s.a0, a: s.a },
            "f4" => NonlinearityKind::F4 { a0: s.a0, a: s.a },
            "x" => NonlinearityKind::RatioX,
            "y" => NonlinearityKind::RatioY,
            "z" => NonlinearityKind::RatioZ,
            "v" => NonlinearityKind::CompositeV,
            "w" => NonlinearityKind::CompositeW,
            other => {
                return Err(unknown(
                    "nonlinearity.kind",
                    other,
                    &["f1", "f2", "f3", "f4", "x", "y", "z", "v", "w"],
                ))
            }
        })
    }

    pub fn mode(&self) -> Result<RegularizationMode> {
        let s = &self.nonlinearity;
        if !(s.floor_tau.is_finite() && s.floor_tau > 0.0) {
            return Err(Error::config(format!("nonlinearity.floor_tau must be positive, got {}", s.floor_tau)));
        }
        match s.regularization.as_str() {
            "unregularized" => Ok(RegularizationMode::Unregularized),
            "small_component" => Ok(RegularizationMode::SmallComponent),
            "small_component_floored" => Ok(RegularizationMode::SmallComponentFloored { tau: s.floor_tau }),
            other => Err(unknown(
                "nonlinearity.regularization",
                other,
                &["unregularized", "small_component", "small_component_floored"],
            )),
        }
    }

    pub fn state(&self) -> Result<AnalyticState> {
        let s = &self.state;
        let family = match s.family.as_str() {
            "box" => Family::Box,
            "harmonic" => Family::Harmonic,
            other => return Err(unknown("state.family", other, &["box", "harmonic"])),
        };
        let [a, b, c, d] = s.spin;
        AnalyticState::new(family, s.n.clone(), Spinor::new(Complex64::new(a, b), Complex64::new(c, d)))
    }

    pub fn evolution(&self) -> Result<EvolutionConfig> {
        let s = &self.evolution;
        let scheme = match s.scheme.as_str() {
            "strang_split" => Scheme::StrangSplit,
            "crank_nicolson_full" => Scheme::CrankNicolsonFull,
            other => return Err(unknown("evolution.scheme", other, &["strang_split", "crank_nicolson_full"])),
        };
        let mut observers = Observers { norm: false, energy: false, max_im_f: false, node_positions: false };
        for o in &s.observers {
            match o.as_str() {
                "norm" => observers.norm = true,
                "energy" => observers.energy = true,
                "max_im_f" => observers.max_im_f = true,
                "node_positions" => observers.node_positions = true,
                other => {
                    return Err(unknown(
                        "evolution.observers",
                        other,
                        &["norm", "energy", "max_im_f", "node_positions"],
                    ))
                }
            }
        }
        Ok(EvolutionConfig {
            dt: s.dt,
            steps: s.steps,
            scheme,
            kind: self.kind()?,
            mode: self.mode()?,
            observers,
            observer_stride: s.observer_stride,
        })
    }

    pub fn precision(&self) -> Result<usize> {
        match self.output.precision {
            1..=17 => Ok(self.output.precision),
            p => Err(Error::config(format!("output.precision must be 1..=17, got {p}"))),
        }
    }

    /// Everything every command needs, checked together.
    pub fn validate_common(&self) -> Result<Resolved> {
        let grid = self.grid()?;
        let params = self.params()?;
        params.validate_for(&grid)?;
        let kind = self.kind()?;
        kind.validate(&grid)?;
        let mode = self.mode()?;
        let state = self.state()?;
        crate::spectra::make_eigenstate(&state, &grid)?;
        self.precision()?;
        Ok(Resolved { grid, params, kind, mode, state })
    }
}

/// Domain values built from a validated configuration.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub grid: GridSpec,
    pub params: PhysicalParams,
    pub kind: NonlinearityKind,
    pub mode: RegularizationMode,
    pub state: AnalyticState,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = RunConfig::default();
        let text = cfg.to_toml_string();
        assert_eq!(RunConfig::from_toml_str(&text).unwrap(), cfg);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_toml_str("[grid]\npoints = 3\n").is_err());
        assert!(RunConfig::from_toml_str("[gird]\n").is_err());
    }

    #[test]
    fn partial_sections_take_defaults() {
        let cfg = RunConfig::from_toml_str("[physics]\nc = 20.0\n").unwrap();
        assert_eq!(cfg.physics.c, 20.0);
        assert_eq!(cfg.physics.hbar, 1.0);
        assert_eq!(cfg.grid, GridSection::default());
    }

    #[test]
    fn zero_floor_is_a_config_error() {
        let cfg = RunConfig::from_toml_str("[nonlinearity]\nfloor_tau = 0.0\n").unwrap();
        assert!(matches!(cfg.mode(), Err(Error::Config(_))));
    }
}
