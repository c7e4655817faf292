use super::check::run_checks;
use super::config::RunConfig;
use super::csv_out::{format_float, write_csv};
use crate::error::Error;
use crate::evolution::{evolve_outcome, Integrator};
use crate::nonlinearity::RegularizationMode;
use crate::spectra::{convergence_study, make_eigenstate, shift_for_state, Classification};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

/// Exit code for an error: configuration-type problems are 1, failures
/// during a run are 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::UnsupportedBoundary(_) | Error::MissingInput(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutcome {
    pub code: i32,
    /// Human-readable report, also written to `summary.txt` when files are produced.
    pub summary: String,
    pub files: Vec<PathBuf>,
}

impl CommandOutcome {
    fn failed(e: &Error) -> Self {
        CommandOutcome { code: exit_code(e), summary: format!("error: {e}\n"), files: Vec::new() }
    }
}

fn write_summary(dir: &Path, text: &str, files: &mut Vec<PathBuf>) -> Result<(), Error> {
    let path = dir.join("summary.txt");
    std::fs::write(&path, text)?;
    files.push(path);
    Ok(())
}

fn prepare_dir(dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

fn opt(x: Option<f64>, precision: usize) -> String {
    x.map(|v| format_float(v, precision)).unwrap_or_default()
}

/// Evolve the configured state; writes `trajectory.csv`, `final_state.csv`
/// and `summary.txt`. A step failure still writes the partial log.
pub fn cmd_evolve(cfg: &RunConfig, out: &Path) -> CommandOutcome {
    let setup = (|| {
        let r = cfg.validate_common()?;
        let ecfg = cfg.evolution()?;
        let f = make_eigenstate(&r.state, &r.grid)?;
        Integrator::new(f.clone(), ecfg.clone(), r.params)?;
        Ok::<_, Error>((r, ecfg, f, cfg.precision()?))
    })();
    let (r, ecfg, f, prec) = match setup {
        Ok(v) => v,
        Err(e) => return CommandOutcome::failed(&e),
    };
    let run = (|| {
        let outcome = evolve_outcome(&f, &ecfg, &r.params)?;
        prepare_dir(out)?;
        let mut files = Vec::new();
        let k = outcome.log.max_nodes();
        let mut header: Vec<String> = ["time", "norm2", "energy", "max_im_f"].iter().map(|s| s.to_string()).collect();
        header.extend((0..k).map(|i| format!("node_{i}")));
        let rows: Vec<Vec<String>> = outcome
            .log
            .samples
            .iter()
            .map(|s| {
                let mut row = vec![
                    format_float(s.time, prec),
                    opt(s.norm2, prec),
                    opt(s.energy, prec),
                    opt(s.max_im_f, prec),
                ];
                row.extend((0..k).map(|i| s.nodes.get(i).map(|v| format_float(*v, prec)).unwrap_or_default()));
                row
            })
            .collect();
        let path = out.join("trajectory.csv");
        write_csv(&path, &header, &rows)?;
        files.push(path);

        let grid = outcome.field.grid().clone();
        let mut header: Vec<String> = ["x", "y", "z"][..grid.dim()].iter().map(|s| s.to_string()).collect();
        header.extend(["re_up", "im_up", "re_down", "im_down"].iter().map(|s| s.to_string()));
        let rows: Vec<Vec<String>> = outcome
            .field
            .values()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut row: Vec<String> = grid.position(i).iter().map(|x| format_float(*x, prec)).collect();
                for v in [s.up.re, s.up.im, s.down.re, s.down.im] {
                    row.push(format_float(v, prec));
                }
                row
            })
            .collect();
        let path = out.join("final_state.csv");
        write_csv(&path, &header, &rows)?;
        files.push(path);

        let mut summary = String::new();
        let steps_done = outcome.log.samples.last().map(|s| s.step).unwrap_or(0);
        let _ = writeln!(
            summary,
            "evolve: kind={} mode={} scheme={} dt={} steps={} samples={}",
            ecfg.kind.label(),
            ecfg.mode.label(),
            ecfg.scheme.label(),
            format_float(ecfg.dt, prec),
            ecfg.steps,
            outcome.log.samples.len()
        );
        if let Some(d) = outcome.log.norm_drift() {
            let _ = writeln!(summary, "norm drift: {}", format_float(d, prec));
        }
        let code = match &outcome.error {
            Some(e) => {
                let _ = writeln!(summary, "step failure after step {steps_done}: {e}");
                EXIT_RUNTIME
            }
            None => EXIT_OK,
        };
        write_summary(out, &summary, &mut files)?;
        Ok::<_, Error>(CommandOutcome { code, summary, files })
    })();
    run.unwrap_or_else(|e| CommandOutcome::failed(&e))
}

/// Shift of the configured state; writes `shift.csv` with the configured
/// regularisation first, followed by the other modes.
pub fn cmd_shift(cfg: &RunConfig, out: &Path) -> CommandOutcome {
    let (r, prec) = match cfg.validate_common().and_then(|r| Ok((r, cfg.precision()?))) {
        Ok(v) => v,
        Err(e) => return CommandOutcome::failed(&e),
    };
    let run = (|| {
        let mut modes = vec![r.mode];
        for m in [RegularizationMode::Unregularized, RegularizationMode::SmallComponent] {
            if !modes.contains(&m) {
                modes.push(m);
            }
        }
        let mut rows = Vec::new();
        let mut summary = String::new();
        for mode in modes {
            let s = shift_for_state(&r.state, &r.grid, &r.kind, &r.params, mode)?;
            let _ = writeln!(
                summary,
                "shift: kind={} mode={} I=({}, {}) deltaE=({}, {}) flagged={}",
                r.kind.label(),
                mode.label(),
                format_float(s.i.re, prec),
                format_float(s.i.im, prec),
                format_float(s.delta_e.re, prec),
                format_float(s.delta_e.im, prec),
                s.flagged_points
            );
            rows.push(vec![
                r.kind.label().to_string(),
                mode.label().to_string(),
                format_float(s.i.re, prec),
                format_float(s.i.im, prec),
                format_float(s.delta_e.re, prec),
                format_float(s.delta_e.im, prec),
                s.flagged_points.to_string(),
            ]);
        }
        prepare_dir(out)?;
        let header: Vec<String> = ["kind", "mode", "I_re", "I_im", "deltaE_re", "deltaE_im", "flagged_points"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let path = out.join("shift.csv");
        write_csv(&path, &header, &rows)?;
        let mut files = vec![path];
        write_summary(out, &summary, &mut files)?;
        Ok::<_, Error>(CommandOutcome { code: EXIT_OK, summary, files })
    })();
    run.unwrap_or_else(|e| CommandOutcome::failed(&e))
}

/// Human-readable classification line.
pub fn classification_line(c: &Classification, prec: usize) -> String {
    match c {
        Classification::Convergent { limit, richardson_error, order } => format!(
            "classification: convergent, limit {} (richardson error {}, order {})",
            format_float(*limit, prec),
            format_float(*richardson_error, prec),
            order.map(|o| format_float(o, 4)).unwrap_or_else(|| "n/a".into())
        ),
        Classification::Divergent { exponent } => {
            format!("classification: divergent, exponent {}", format_float(*exponent, 4))
        }
        Classification::Inconclusive { slope } => {
            format!("classification: inconclusive, slope {}", format_float(*slope, 4))
        }
    }
}

/// Grid-refinement study; writes `study.csv` and the classification to
/// `summary.txt`.
pub fn cmd_study(cfg: &RunConfig, out: &Path) -> CommandOutcome {
    let (r, prec) = match cfg.validate_common().and_then(|r| {
        if cfg.study.levels.len() < 3 || cfg.study.levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("study.levels needs at least 3 strictly increasing sizes".into()));
        }
        for &n in &cfg.study.levels {
            let g = r.grid.with_points(n)?;
            r.params.validate_for(&g)?;
        }
        Ok((r, cfg.precision()?))
    }) {
        Ok(v) => v,
        Err(e) => return CommandOutcome::failed(&e),
    };
    let run = (|| {
        let rep = convergence_study(&r.state, &r.grid, &r.kind, &r.params, r.mode, &cfg.study.levels)?;
        prepare_dir(out)?;
        let header: Vec<String> =
            ["n_points", "I_re", "I_im", "flagged_points"].iter().map(|s| s.to_string()).collect();
        let rows: Vec<Vec<String>> = rep
            .levels
            .iter()
            .zip(&rep.values)
            .zip(&rep.flagged)
            .map(|((n, v), fl)| vec![n.to_string(), format_float(v.re, prec), format_float(v.im, prec), fl.to_string()])
            .collect();
        let path = out.join("study.csv");
        write_csv(&path, &header, &rows)?;
        let mut files = vec![path];
        let summary = format!(
            "study: kind={} mode={} levels={:?} slope={}\n{}\n",
            r.kind.label(),
            r.mode.label(),
            rep.levels,
            format_float(rep.slope, 6),
            classification_line(&rep.classification, prec)
        );
        write_summary(out, &summary, &mut files)?;
        Ok::<_, Error>(CommandOutcome { code: EXIT_OK, summary, files })
    })();
    run.unwrap_or_else(|e| CommandOutcome::failed(&e))
}

/// Invariant suite; exit 0 iff every row passes. Writes no files.
pub fn cmd_check(cfg: &RunConfig) -> CommandOutcome {
    let r = match cfg.validate_common() {
        Ok(r) => r,
        Err(e) => return CommandOutcome::failed(&e),
    };
    match run_checks(&r) {
        Ok(rows) => {
            let mut summary = format!("{:<22} {:>12} {:>12}  result\n", "check", "value", "tolerance");
            for row in &rows {
                let _ = writeln!(
                    summary,
                    "{:<22} {:>12.3e} {:>12.3e}  {}",
                    row.name,
                    row.value,
                    row.tolerance,
                    if row.passed { "PASS" } else { "FAIL" }
                );
            }
            let code = if rows.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_RUNTIME };
            CommandOutcome { code, summary, files: Vec::new() }
        }
        Err(e) => CommandOutcome::failed(&e),
    }
}
