//! `photonic` — train and run interferometer-based classifiers from the
//! command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use photonic_core::ErrorCategory;

/// Exit codes: 0 success, 1 I/O, 2 configuration, 3 data, 4 numerical.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(photonic_core::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(message) => write!(f, "{message}"),
            CliError::Core(error) => write!(f, "{error}"),
        }
    }
}

impl From<photonic_core::Error> for CliError {
    fn from(error: photonic_core::Error) -> Self {
        CliError::Core(error)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(error) => match error.category() {
                ErrorCategory::Io => 1,
                ErrorCategory::Data => 3,
                ErrorCategory::Numerical => 4,
            },
        }
    }
}

#[derive(Parser)]
#[command(name = "photonic", version, about = "Fock-state circuit classifiers")]
struct Cli {
    /// Config file applied before environment and flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the kernel observable and export the fit curve as CSV.
    FitKernel(commands::fit_kernel::Args),
    /// Train a classifier and persist the model plus a metrics report.
    Train(commands::train::Args),
    /// Label points with a saved model.
    Predict(commands::predict::Args),
    /// Accuracy of a saved model on a labeled set.
    Score(commands::score::Args),
    /// Export the decision values of a model over a uniform grid.
    BoundaryGrid(commands::boundary::Args),
    /// Encode a polymer table and emit the split manifest.
    PrepareData(commands::prepare::Args),
    /// Generate the synthetic two-class benchmark set.
    SynthData(commands::synth::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.config.as_deref();
    let result = match cli.command {
        Command::FitKernel(args) => commands::fit_kernel::run(args, config),
        Command::Train(args) => commands::train::run(args, config),
        Command::Predict(args) => commands::predict::run(args, config),
        Command::Score(args) => commands::score::run(args, config),
        Command::BoundaryGrid(args) => commands::boundary::run(args, config),
        Command::PrepareData(args) => commands::prepare::run(args, config),
        Command::SynthData(args) => commands::synth::run(args, config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
