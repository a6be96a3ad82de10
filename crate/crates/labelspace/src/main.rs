//! Batch CLI over the experiment pipeline: `run`, `analyze`, `report`.
//!
//! Exit codes: 0 success, 1 configuration error, 2 data error, 3 internal
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use labelspace::experiment::{
    analyze_files, report_files, run_to_files, ExperimentConfig, ExperimentError,
};

#[derive(Parser)]
#[command(
    name = "labelspace",
    about = "Label space partitioning experiments: random and data-driven partitions vs a priori transforms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train and score every configured method; writes scores.csv.
    Run {
        /// JSON experiment configuration (see README for the schema).
        #[arg(long)]
        config: PathBuf,
    },
    /// Compute likelihood-of-beating-random tables from a scores CSV.
    Analyze {
        /// scores.csv produced by `run`.
        #[arg(long)]
        scores: PathBuf,
        /// Directory for likelihoods.csv, method_scores.csv, aggregates.csv.
        #[arg(long)]
        output_dir: PathBuf,
    },
    /// Render the markdown report, histograms, and statistical tests.
    Report {
        /// likelihoods.csv produced by `analyze`.
        #[arg(long)]
        likelihoods: PathBuf,
        /// method_scores.csv produced by `analyze`.
        #[arg(long)]
        method_scores: PathBuf,
        /// Familywise significance level for the Rom procedure.
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long)]
        output_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), ExperimentError> {
    match cli.command {
        Command::Run { config } => {
            let text = std::fs::read_to_string(&config).map_err(|source| ExperimentError::Io {
                path: config.clone(),
                source,
            })?;
            let config = ExperimentConfig::from_json(&text)?;
            let (path, warnings) = run_to_files(&config)?;
            for warning in &warnings {
                eprintln!("warning: {warning}");
            }
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Analyze { scores, output_dir } => {
            let (output, written) = analyze_files(&scores, &output_dir)?;
            for warning in &output.warnings {
                eprintln!("warning: {warning}");
            }
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Report {
            likelihoods,
            method_scores,
            alpha,
            output_dir,
        } => {
            let written = report_files(&likelihoods, &method_scores, alpha, &output_dir)?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}
