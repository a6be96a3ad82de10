//! Experiment orchestration: configuration, the run matrix, analysis, and
//! report emission, plus the file-level wrappers the `labelspace` binary
//! drives.
//!
//! `run` scores every (dataset, method) arm — and every sampled RAkELd
//! partition — into `scores.csv`. `analyze` turns raw scores into
//! `likelihoods.csv`, `aggregates.csv`, and `method_scores.csv` (per-method
//! scores plus the averaged-random baseline column). `report` renders
//! `report.md` with `histograms.csv`, `omnibus.csv`, and `posthoc.csv`.
//! Raw scores are always persisted so analysis can be re-run without
//! retraining.

mod analyze;
mod config;
mod report;
mod run;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use analyze::{cmd_analyze, AnalyzeOutput, ScoreTable, RANDOM_BASELINE};
pub use config::{CartConfig, DatasetEntry, ExperimentConfig, MethodSpec};
pub use report::{cmd_report, ReportOutput};
pub use run::{
    cmd_run, expected_record_count, parse_scores_csv, scores_to_csv, RunOutput, ScoreRecord,
};

use crate::stats::LikelihoodTable;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ExperimentError {
    /// Process exit code: 1 config, 2 data, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) => 1,
            ExperimentError::Data(_) | ExperimentError::Io { .. } => 2,
            ExperimentError::Internal(_) => 3,
        }
    }
}

fn read_file(path: &Path) -> Result<String, ExperimentError> {
    std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, content: &str) -> Result<(), ExperimentError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|source| ExperimentError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, content).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the experiment and writes `scores.csv` into the output directory.
/// Returns the scores path and any per-dataset warnings.
pub fn run_to_files(config: &ExperimentConfig) -> Result<(PathBuf, Vec<String>), ExperimentError> {
    let output = cmd_run(config)?;
    let csv = scores_to_csv(&output.records)?;
    let path = config.output_dir.join("scores.csv");
    write_file(&path, &csv)?;
    Ok((path, output.warnings))
}

/// Reads a scores CSV and writes `likelihoods.csv`, `method_scores.csv`, and
/// (given two or more datasets) `aggregates.csv` next to `output_dir`.
pub fn analyze_files(
    scores_path: &Path,
    output_dir: &Path,
) -> Result<(AnalyzeOutput, Vec<PathBuf>), ExperimentError> {
    let records = parse_scores_csv(&read_file(scores_path)?)?;
    let output = cmd_analyze(&records)?;
    let mut written = Vec::new();
    let likelihoods_path = output_dir.join("likelihoods.csv");
    write_file(&likelihoods_path, &output.likelihoods.to_csv())?;
    written.push(likelihoods_path);
    let scores_table_path = output_dir.join("method_scores.csv");
    write_file(&scores_table_path, &output.method_scores.to_csv())?;
    written.push(scores_table_path);
    if let Some(aggregates) = &output.aggregates {
        let aggregates_path = output_dir.join("aggregates.csv");
        write_file(&aggregates_path, &aggregates.to_csv())?;
        written.push(aggregates_path);
    }
    Ok((output, written))
}

/// Renders the report and its CSV side files from analysis output.
pub fn report_files(
    likelihoods_path: &Path,
    method_scores_path: &Path,
    alpha: f64,
    output_dir: &Path,
) -> Result<Vec<PathBuf>, ExperimentError> {
    let likelihoods = LikelihoodTable::from_csv(&read_file(likelihoods_path)?)
        .map_err(|e| ExperimentError::Data(e.to_string()))?;
    let method_scores = ScoreTable::from_csv(&read_file(method_scores_path)?)?;
    let output = cmd_report(&likelihoods, &method_scores, alpha)?;
    let files = [
        ("report.md", output.markdown),
        ("histograms.csv", output.histograms_csv),
        ("omnibus.csv", output.omnibus_csv),
        ("posthoc.csv", output.posthoc_csv),
    ];
    let mut written = Vec::new();
    for (name, content) in files {
        let path = output_dir.join(name);
        write_file(&path, &content)?;
        written.push(path);
    }
    Ok(written)
}
