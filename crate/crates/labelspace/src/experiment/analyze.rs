//! Raw scores to likelihood tables.
//!
//! For each dataset and metric, the RAkELd samples (all block sizes pooled)
//! form the random baseline; every other method's likelihood is the fraction
//! of that pool it strictly beats. Aggregates summarize likelihoods across
//! datasets, and a method-score table — the per-dataset scores plus a
//! `random` column holding the mean RAkELd score — feeds the statistical
//! tests downstream.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::metrics::Metric;
use crate::stats::{
    aggregate_likelihoods, likelihood_better, AggregateTable, Direction, LikelihoodTable,
};

use super::config::MethodSpec;
use super::run::ScoreRecord;
use super::ExperimentError;

/// Method id used for the averaged-random baseline column.
pub const RANDOM_BASELINE: &str = "random";

/// Per-(dataset, method, metric) scores for the rank-based tests.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreTable {
    entries: BTreeMap<(String, String, Metric), f64>,
}

impl ScoreTable {
    pub fn insert(&mut self, dataset: &str, method: &str, metric: Metric, value: f64) {
        self.entries
            .insert((dataset.into(), method.into(), metric), value);
    }

    pub fn get(&self, dataset: &str, method: &str, metric: Metric) -> Option<f64> {
        self.entries
            .get(&(dataset.to_string(), method.to_string(), metric))
            .copied()
    }

    pub fn datasets(&self) -> Vec<String> {
        let mut names: Vec<String> = self.entries.keys().map(|(d, _, _)| d.clone()).collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn methods(&self) -> Vec<String> {
        let mut names: Vec<String> = self.entries.keys().map(|(_, m, _)| m.clone()).collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("dataset,method,metric,score\n");
        for ((dataset, method, metric), value) in &self.entries {
            let _ = writeln!(out, "{dataset},{method},{},{value:.6}", metric.id());
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, ExperimentError> {
        let mut table = Self::default();
        for (i, line) in text.lines().enumerate() {
            if i == 0 || line.is_empty() {
                continue;
            }
            let bad =
                |message: String| ExperimentError::Data(format!("scores line {}: {message}", i + 1));
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(bad(format!("expected 4 fields, got {}", fields.len())));
            }
            let metric = Metric::from_id(fields[2])
                .ok_or_else(|| bad(format!("unknown metric {:?}", fields[2])))?;
            let value: f64 = fields[3]
                .parse()
                .map_err(|_| bad(format!("bad score {:?}", fields[3])))?;
            table.insert(fields[0], fields[1], metric, value);
        }
        Ok(table)
    }
}

pub struct AnalyzeOutput {
    pub likelihoods: LikelihoodTable,
    /// Present only when at least two datasets contributed (the sample
    /// standard deviation needs them).
    pub aggregates: Option<AggregateTable>,
    pub method_scores: ScoreTable,
    pub warnings: Vec<String>,
}

/// Computes likelihood-of-beating-random per (dataset, method, metric),
/// aggregates across datasets, and the method-score table with the averaged
/// random baseline. Datasets without any RAkELd samples are excluded with a
/// warning.
pub fn cmd_analyze(records: &[ScoreRecord]) -> Result<AnalyzeOutput, ExperimentError> {
    let mut warnings = Vec::new();

    // dataset -> metric -> rakeld pool, and dataset -> (method, metric) -> score.
    let mut pools: BTreeMap<String, BTreeMap<Metric, Vec<f64>>> = BTreeMap::new();
    let mut method_values: BTreeMap<String, BTreeMap<(String, Metric), f64>> = BTreeMap::new();
    for record in records {
        if record.method == MethodSpec::Rakeld {
            pools
                .entry(record.dataset.clone())
                .or_default()
                .entry(record.metric)
                .or_default()
                .push(record.value);
        } else {
            method_values
                .entry(record.dataset.clone())
                .or_default()
                .insert((record.method.id(), record.metric), record.value);
        }
    }

    let mut likelihoods = LikelihoodTable::new();
    let mut method_scores = ScoreTable::default();
    for (dataset, values) in &method_values {
        let Some(dataset_pools) = pools.get(dataset) else {
            warnings.push(format!(
                "dataset {dataset}: no rakeld samples, excluded from analysis"
            ));
            continue;
        };
        for ((method, metric), &score) in values {
            let Some(pool) = dataset_pools.get(metric) else {
                warnings.push(format!(
                    "dataset {dataset}: no rakeld samples for {}, entry skipped",
                    metric.id()
                ));
                continue;
            };
            let likelihood =
                likelihood_better(score, pool, Direction::for_metric(*metric))
                    .map_err(|e| ExperimentError::Internal(e.to_string()))?;
            likelihoods.insert(dataset, method, *metric, likelihood);
            method_scores.insert(dataset, method, *metric, score);
        }
        for (metric, pool) in dataset_pools {
            let mean = pool.iter().sum::<f64>() / pool.len() as f64;
            method_scores.insert(dataset, RANDOM_BASELINE, *metric, mean);
        }
    }

    let datasets = likelihoods.datasets();
    let aggregates = if datasets.len() >= 2 {
        let mut table = AggregateTable::new();
        for method in likelihoods.methods() {
            for metric in Metric::ALL {
                let values = likelihoods.values_for(&method, metric);
                if values.len() == datasets.len() {
                    let aggregate = aggregate_likelihoods(&values)
                        .map_err(|e| ExperimentError::Internal(e.to_string()))?;
                    table.insert(&method, metric, aggregate);
                }
            }
        }
        Some(table)
    } else {
        if !likelihoods.is_empty() {
            warnings.push(
                "fewer than two datasets: aggregate table skipped (standard deviation undefined)"
                    .into(),
            );
        }
        None
    };

    Ok(AnalyzeOutput {
        likelihoods,
        aggregates,
        method_scores,
        warnings,
    })
}
