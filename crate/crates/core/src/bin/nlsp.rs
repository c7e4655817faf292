use clap::{Parser, Subcommand};
use nlsp_core::harness::{cmd_check, cmd_evolve, cmd_shift, cmd_study, RunConfig, EXIT_CONFIG};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nlsp", version, about = "Spinor wave equations with regularised scale-invariant nonlinearities")]
struct Cli {
    /// TOML run configuration; defaults are used for anything missing.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overriding `output.dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the effective configuration and exit.
    #[arg(long)]
    print_config: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Time-evolve the configured state.
    Evolve,
    /// First-order shift of the configured state.
    Shift,
    /// Grid-refinement study of the shift.
    Study,
    /// Run the invariant suite.
    Check,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => match RunConfig::from_path(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        },
        None => RunConfig::default(),
    };
    if cli.print_config {
        print!("{}", cfg.to_toml_string());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: no subcommand given (evolve, shift, study or check)");
        return ExitCode::from(EXIT_CONFIG as u8);
    };
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from(&cfg.output.dir));
    let outcome = match command {
        Command::Evolve => cmd_evolve(&cfg, &out),
        Command::Shift => cmd_shift(&cfg, &out),
        Command::Study => cmd_study(&cfg, &out),
        Command::Check => cmd_check(&cfg),
    };
    if outcome.code == 0 {
        print!("{}", outcome.summary);
    } else {
        eprint!("{}", outcome.summary);
    }
    ExitCode::from(outcome.code as u8)
}
