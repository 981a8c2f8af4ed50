//! Command-line front end for `eulb-core`: single evaluations, m-sweeps,
//! genetic optimizations and one-shot figure reproduction.
//!
//! Every command reads a TOML [`ScenarioConfig`](eulb_core::ScenarioConfig)
//! (or a built-in preset for `reproduce`) and writes either flat JSON or CSV.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use commands::{compute, optimize, reproduce, sweep};
pub use output::{format_sig9, scenario_digest};

#[derive(Debug, Parser)]
#[command(
    name = "eulb",
    version,
    about = "Entropic uncertainty under weak measurement, noise and reversal"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one filter setting and print a JSON report.
    Compute(ComputeArgs),
    /// Minimize over (n1, n2) along an m grid and write a CSV.
    Sweep(SweepArgs),
    /// Run the genetic search over (m, n1, n2) and write a JSON result.
    Optimize(OptimizeArgs),
    /// Regenerate one figure from its built-in presets and compare against reference values.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub n1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub n2: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Defaults to the lower end of the config's `search.m_range`.
    #[arg(long)]
    pub m_min: Option<f64>,
    /// Defaults to the upper end of the config's `search.m_range`.
    #[arg(long)]
    pub m_max: Option<f64>,
    #[arg(long, default_value_t = 31)]
    pub m_steps: usize,
    /// Overrides `optimizer.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides `optimizer.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// One of fig2 … fig9.
    #[arg(long)]
    pub figure: String,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 31)]
    pub m_steps: usize,
    /// Overrides each preset's `optimizer.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Replacement for the built-in table of reference values.
    #[arg(long)]
    pub expectations: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("degenerate filter: {0}")]
    Degenerate(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<eulb_core::Error> for CliError {
    fn from(e: eulb_core::Error) -> Self {
        match e {
            eulb_core::Error::FilterAnnihilation { .. } => CliError::Degenerate(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

/// Runs one command, writing normal output to stdout. Errors are returned
/// rather than printed so callers decide on formatting.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Compute(a) => compute(&a, &mut stdout),
        Command::Sweep(a) => sweep(&a),
        Command::Optimize(a) => optimize(&a),
        Command::Reproduce(a) => reproduce(&a, &mut stdout),
    }
}

pub fn main_with(cli: Cli) -> ExitCode {
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
