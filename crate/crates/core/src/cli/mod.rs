//! Command-line front end: flat `key=value` configs in, CSV or JSON tables out.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration error,
//! 3 infeasible or divergent result, 4 enumeration cap exceeded.

mod commands;
pub mod config;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{cmd_analyze, cmd_equilibria, cmd_optimize, cmd_simulate, cmd_sweep, Outcome};
pub use config::{OutputFormat, RunConfig};

use crate::Error;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("duplicate key `{0}`")]
    DuplicateKey(String),
    #[error("line {line}: expected `key=value`")]
    Syntax { line: usize },
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("{0}")]
    Unsupported(String),
    #[error("divergent ages at nodes {0}")]
    Divergent(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Model(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Divergent(_) | CliError::Infeasible(_) => 3,
            CliError::Model(e) => match e {
                Error::CapExceeded { .. } => 4,
                Error::NoStableProfile | Error::Infeasible(_) => 3,
                _ => 2,
            },
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Closed-form ages, critical spacing, subscriber fraction and thresholds.
    Analyze,
    /// Monte Carlo age estimates for a fixed subscription profile.
    Simulate,
    /// All AC-stable subscription profiles, server-preferred one marked.
    Equilibria,
    /// Server's utility-maximizing sampling rate.
    Optimize,
    /// Equilibrium fraction and utility over a range of sampling rates.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "gossip-age",
    version,
    about = "Version-age gossip networks with subscription games"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Flat key=value config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Master seed; overrides `seed` in the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
}

/// Applies command-line overrides to a parsed config.
pub fn apply_overrides(cfg: &mut RunConfig, args: &Args) {
    if let Some(seed) = args.seed {
        cfg.seed = seed;
        cfg.sim.master_seed = seed;
    }
    if let Some(path) = &args.output {
        cfg.output_path = Some(path.clone());
    }
    match args.format {
        Some(FormatArg::Csv) => cfg.format = OutputFormat::Csv,
        Some(FormatArg::Json) => cfg.format = OutputFormat::Json,
        None => {}
    }
}

pub fn execute(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze => cmd_analyze(cfg),
        Command::Simulate => cmd_simulate(cfg),
        Command::Equilibria => cmd_equilibria(cfg),
        Command::Optimize => cmd_optimize(cfg),
        Command::Sweep => cmd_sweep(cfg),
    }
}

/// Serializes an outcome in the requested format.
pub fn render(outcome: &Outcome, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => outcome.table.to_csv(),
        OutputFormat::Json => {
            let value = outcome
                .json
                .clone()
                .unwrap_or_else(|| outcome.table.to_json_value());
            let mut s = serde_json::to_string_pretty(&value).expect("json values always serialize");
            s.push('\n');
            s
        }
    }
}

fn run_inner(args: &Args) -> Result<Option<CliError>, CliError> {
    let path = args
        .config
        .as_ref()
        .ok_or_else(|| CliError::MissingKey("--config".into()))?;
    let mut cfg = RunConfig::from_path(path)?;
    apply_overrides(&mut cfg, args);
    let outcome = execute(args.command, &cfg)?;
    let text = render(&outcome, cfg.format);
    match &cfg.output_path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(outcome.status)
}

/// Runs the CLI and returns the process exit code.
pub fn run(args: &Args) -> i32 {
    match run_inner(args) {
        Ok(None) => 0,
        Ok(Some(status)) | Err(status) => {
            eprintln!("gossip-age: {status}");
            status.exit_code()
        }
    }
}
