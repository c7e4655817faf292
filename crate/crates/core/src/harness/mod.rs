//! Configuration, CSV output and the commands behind the `nlsp` binary.

pub mod check;
pub mod commands;
pub mod config;
pub mod csv_out;

pub use commands::{cmd_check, cmd_evolve, cmd_shift, cmd_study, exit_code, CommandOutcome, EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME};
pub use config::{Resolved, RunConfig};
