//! Batch runner for the point-split workbench: parses a run configuration,
//! dispatches to the core computations and writes JSON or CSV reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use clap::{Parser, Subcommand};

pub use config::{CommonArgs, Format, Harmonic, RunConfig};
pub use error::CliError;
pub use report::{Report, Table};

use config::Defaults;

#[derive(Debug, Parser)]
#[command(name = "pointsplit", version, about = "Point-split anomaly and vacuum workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operator-identity suite: anticommutators, spinors, hermiticity,
    /// continuity and the split-current relations.
    Verify(CommonArgs),
    /// Schwinger term two ways, the split sweep and the formal derivation.
    Anomaly(CommonArgs),
    /// Split spectrum, redefined vacuum and brute-force ground state.
    Vacuum(CommonArgs),
    /// Abel-damped kernel integral extrapolated to zero damping.
    Kernel(CommonArgs),
    /// Symbolic charge–current derivations.
    Derive(CommonArgs),
}

impl Command {
    fn parts(&self) -> (&CommonArgs, &'static [f64]) {
        match self {
            Command::Verify(a) => (a, commands::VERIFY_EPS),
            Command::Anomaly(a) => (a, commands::ANOMALY_EPS),
            Command::Vacuum(a) => (a, commands::VACUUM_EPS),
            Command::Kernel(a) => (a, commands::KERNEL_EPS),
            Command::Derive(a) => (a, &[]),
        }
    }
}

/// Resolves the configuration and runs the command, without writing output.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    let (args, eps) = command.parts();
    let cfg = RunConfig::resolve(args, Defaults { eps })?;
    match command {
        Command::Verify(_) => commands::verify(cfg),
        Command::Anomaly(_) => commands::anomaly(cfg),
        Command::Vacuum(_) => commands::vacuum(cfg),
        Command::Kernel(_) => commands::kernel(cfg),
        Command::Derive(_) => commands::derive(cfg),
    }
}

/// Runs and emits; returns the process exit code (0 pass, 1 failed check
/// or runtime error, 2 configuration error).
pub fn run(cli: &Cli) -> u8 {
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = report.emit() {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAILED {}: residual {:e} >= {:e}", c.name, c.max_residual, c.tolerance);
    }
    if report.all_passed() {
        0
    } else {
        1
    }
}
