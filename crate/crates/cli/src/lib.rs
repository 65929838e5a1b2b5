//! Command-line experiments and self-checking witness certificates.

pub mod args;
pub mod audit;
pub mod bounds;
pub mod jung;
pub mod output;
pub mod witness;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use args::{AuditArgs, BoundsArgs, JungArgs, VerifyArgs, WitnessArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid configuration; exit code 2.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Json(_) => 2,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

impl From<covercert_core::Error> for CliError {
    fn from(e: covercert_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Result of a command: whether its checks passed and the text it emits.
#[derive(Debug)]
pub struct Outcome {
    pub pass: bool,
    pub body: String,
}

#[derive(Debug, Parser)]
#[command(name = "covercert", version, about = "Universal-cover volume bounds and non-cover witnesses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the volume bounds for one dimension (JSON) or a sweep (CSV).
    Bounds(BoundsArgs),
    /// Search for a diameter-1 set that no member of a cover family contains.
    Witness(WitnessArgs),
    /// Recheck a witness certificate from its JSON alone.
    Verify(VerifyArgs),
    /// Check enclosing radii of diameter-1 clouds against Jung's bound.
    JungCheck(JungArgs),
    /// Run a named invariant suite.
    Audit(AuditArgs),
}

pub fn execute(command: &Command) -> CliResult<(Outcome, Option<std::path::PathBuf>)> {
    Ok(match command {
        Command::Bounds(a) => (bounds::run(a)?, a.out.clone()),
        Command::Witness(a) => (witness::run(a)?, a.out.clone()),
        Command::Verify(a) => (witness::run_verify(a)?, a.out.clone()),
        Command::JungCheck(a) => (jung::run(a)?, a.out.clone()),
        Command::Audit(a) => (audit::run(a)?, a.out.clone()),
    })
}

/// Runs a parsed command line, writes its output and maps the result to an
/// exit code: 0 success, 1 failed check, 2 configuration error.
pub fn main_with(cli: Cli) -> ExitCode {
    match execute(&cli.command).and_then(|(outcome, out)| {
        output::emit(&outcome.body, out.as_deref())?;
        Ok(outcome.pass)
    }) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("covercert: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
