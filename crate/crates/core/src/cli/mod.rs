//! Command-line front end.
//!
//! Every command writes its result to `--out` when given, stdout otherwise.
//! Exit codes: 0 success, 1 usage error, 2 data error. Detection verdicts
//! are part of the output, never the exit code.

pub mod commands;
pub mod io;
pub mod sweep;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;

#[derive(Debug, Parser)]
#[command(name = "lindmap", version, about = "Positive maps from Lindblad dissipators and entanglement detection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positivity, complete positivity and Choi spectrum of a map family.
    Analyze(AnalyzeArgs),
    /// Apply the lifted Λ_γ to a three-qubit state file.
    Detect(DetectArgs),
    /// Sweep a parameter and write CSV.
    Sweep(SweepArgs),
    /// Emit a named state as JSON.
    State(StateArgs),
    /// Dump the Choi matrix of a family as JSON.
    Choi(ChoiArgs),
}

/// Family parameter, either positional or through the family's own flag.
#[derive(Debug, Clone, Args)]
pub struct FamilyParam {
    /// lambda-gamma, phi-alpha, phi2-alpha, phiC-beta, choi-F or transposition
    pub family: String,
    /// Parameter value (alternative to --gamma/--alpha/--beta).
    pub value: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub param: FamilyParam,
    /// Pure-state samples for the positivity scan.
    #[arg(long, default_value_t = crate::superop::DEFAULT_SCAN_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = crate::superop::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// JSON state file.
    pub state_file: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Trace-term constant of the lifted map.
    #[arg(long, default_value_t = crate::gme::DETECTION_C)]
    pub c: f64,
    /// Conjugate each lifted term by σx on its party.
    #[arg(long)]
    pub rotated: bool,
    /// Report the witness value and base the verdict on it.
    #[arg(long)]
    pub witness: bool,
    /// Report 𝒩_GME.
    #[arg(long)]
    pub ngme: bool,
    /// Normalization of 𝒩_GME: a positive number, or `w` to make the W state score 1.
    #[arg(long = "K", default_value = "1")]
    pub k: String,
    /// Skip density-matrix validation of the input.
    #[arg(long)]
    pub raw: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `lifted` or a family name.
    pub target: String,
    /// gamma, alpha, beta or p. Defaults to the target's natural parameter.
    #[arg(long)]
    pub param: Option<String>,
    #[arg(long)]
    pub start: f64,
    #[arg(long)]
    pub stop: f64,
    #[arg(long)]
    pub steps: usize,
    /// Named state for lifted sweeps (w, ghz, mixed, …).
    #[arg(long, default_value = "w")]
    pub state: String,
    /// State file for lifted sweeps; overrides --state.
    #[arg(long)]
    pub state_file: Option<PathBuf>,
    /// Fixed γ for `p` sweeps.
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    #[arg(long)]
    pub rotated: bool,
    #[arg(long)]
    pub witness: bool,
    #[arg(long)]
    pub ngme: bool,
    #[arg(long = "K", default_value = "1")]
    pub k: String,
    #[arg(long)]
    pub raw: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// w, ghz, noisy-w, schmidt, mixed, random-pure or biseparable
    pub name: String,
    /// Noise weight for noisy-w.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    /// Dimension for mixed and random-pure.
    #[arg(long, default_value_t = 8)]
    pub dim: usize,
    #[arg(long, default_value_t = crate::superop::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChoiArgs {
    #[command(flatten)]
    pub param: FamilyParam,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Io(_) => 2,
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let tol = crate::tol::Tolerances::from_env();
    let (text, out) = match cli.command {
        Command::Analyze(a) => (commands::cmd_analyze(&a, tol)?, a.out),
        Command::Detect(a) => (commands::cmd_detect(&a, tol)?, a.out),
        Command::Sweep(a) => (commands::cmd_sweep(&a)?, a.out),
        Command::State(a) => (commands::cmd_state(&a)?, a.out),
        Command::Choi(a) => (commands::cmd_choi(&a)?, a.out),
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
