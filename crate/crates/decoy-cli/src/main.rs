//! `decoy` — batch front-end for coherent-probe yield estimation.
//!
//! Subcommands: `coeffs`, `estimate`, `simulate`, `optimize`, `reproduce`.
//! One JSON config per run (`--config`), results as JSON on stdout or CSV
//! files; errors go to stderr as machine-parsable JSON with exit codes
//! 2 (config), 3 (missing data), 4 (infeasible sweep).

mod commands;
mod config;
mod gainfile;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::ExperimentConfig;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    MissingData { message: String, missing: Vec<Vec<f64>> },
    Infeasible(String),
    Internal(String),
}

impl CliError {
    /// Schedule/model/domain validation failures are config errors; a gain
    /// tensor with holes is missing data; budget shortfalls are infeasible.
    pub fn config_from(e: impl std::fmt::Display) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn from_core(e: decoy_core::DecoyError) -> Self {
        match e {
            decoy_core::DecoyError::IncompleteTensor { missing } => CliError::MissingData {
                message: "gain tensor incomplete".into(),
                missing,
            },
            other => CliError::Config(other.to_string()),
        }
    }

    pub fn from_budget(e: error_budget::BudgetError) -> Self {
        match e {
            error_budget::BudgetError::BudgetTooSmall { .. }
            | error_budget::BudgetError::NoFeasibleL => CliError::Infeasible(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::MissingData { .. } => 3,
            CliError::Infeasible(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Config(message) => json!({"kind": "config", "message": message}),
            CliError::MissingData { message, missing } => {
                json!({"kind": "missing_data", "message": message, "missing": missing})
            }
            CliError::Infeasible(message) => json!({"kind": "infeasible", "message": message}),
            CliError::Internal(message) => json!({"kind": "internal", "message": message}),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "decoy",
    version,
    about = "Single-photon yield estimation from coherent-probe experiments"
)]
struct Cli {
    /// JSON experiment config; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path for file-producing commands.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Force exact-rational arithmetic.
    #[arg(long, global = true)]
    exact: bool,
    /// Significant digits for exact-mode decimal output.
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Print the effective config (all defaults resolved) and exit.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Print decoy coefficients, interval width, and noise factor.
    Coeffs,
    /// Estimate the single-photon (or coincidence) yield from gains.
    Estimate,
    /// Run a simulated experiment and write a gain file.
    Simulate,
    /// Optimize the probe count for a pulse budget.
    Optimize,
    /// Reproduce a figure sweep as CSV plus fit JSON.
    Reproduce {
        /// fig2 | fig3 | fig4 | fig5 | fig6 | fig7
        #[arg(long)]
        figure: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("{}", error.to_json());
            ExitCode::from(error.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = ExperimentConfig::load(
        cli.config.as_deref(),
        cli.output,
        cli.seed,
        cli.exact,
        cli.digits,
    )?;
    if cli.print_config {
        let text = serde_json::to_string_pretty(&config)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        println!("{text}");
        return Ok(());
    }
    match cli.command {
        None => Err(CliError::Config("no subcommand given (see --help)".into())),
        Some(Command::Coeffs) => commands::coeffs::run(&config),
        Some(Command::Estimate) => commands::estimate::run(&config),
        Some(Command::Simulate) => commands::simulate::run(&config),
        Some(Command::Optimize) => commands::optimize::run(&config),
        Some(Command::Reproduce { figure }) => commands::reproduce::run(&config, &figure),
    }
}
