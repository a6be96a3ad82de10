//! The run matrix: for every dataset, train and score each configured arm —
//! BR, LP, the community-detector ensembles, and the RAkELd samples per
//! block size — emitting one record per (arm, metric).
//!
//! Every cell derives its RNG stream from the config seed and the cell's
//! coordinates, so the matrix evaluates embarrassingly parallel with results
//! independent of scheduling order, and reruns are byte-identical.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::community;
use crate::dataset::{load_pair, DatasetPair, LabelMatrix};
use crate::graph::build_cooccurrence_graph;
use crate::metrics::{self, Metric, PredictionBatch};
use crate::transform::{
    br_predict_matrix, br_train, count_partitions, ensemble_train, k_for_percentages,
    sample_partitions, LabelPartition,
};
use crate::util::fnv1a;

use super::config::{ExperimentConfig, MethodSpec};
use super::ExperimentError;

/// One scored cell of the experiment matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub dataset: String,
    pub method: MethodSpec,
    pub k: Option<usize>,
    pub sample_id: Option<usize>,
    pub metric: Metric,
    pub value: f64,
}

impl ScoreRecord {
    fn validate(&self) -> Result<(), ExperimentError> {
        if !self.value.is_finite() {
            return Err(ExperimentError::Internal(format!(
                "non-finite score for {} on {}",
                self.method.id(),
                self.dataset
            )));
        }
        if self.method == MethodSpec::Rakeld && (self.k.is_none() || self.sample_id.is_none()) {
            return Err(ExperimentError::Internal(
                "rakeld record without k or sample_id".into(),
            ));
        }
        Ok(())
    }
}

pub struct RunOutput {
    pub records: Vec<ScoreRecord>,
    /// Per-dataset or per-arm failures; the run continues past them.
    pub warnings: Vec<String>,
}

/// Serializes records with the fixed header
/// `dataset,method,variant,k,sample_id,metric,value` and 6-decimal values.
pub fn scores_to_csv(records: &[ScoreRecord]) -> Result<String, ExperimentError> {
    let mut out = String::from("dataset,method,variant,k,sample_id,metric,value\n");
    for record in records {
        record.validate()?;
        if record.dataset.contains(',') {
            return Err(ExperimentError::Internal(format!(
                "dataset name {:?} contains a comma",
                record.dataset
            )));
        }
        let (method, variant) = record.method.csv_fields();
        let k = record.k.map(|k| k.to_string()).unwrap_or_default();
        let sample = record.sample_id.map(|s| s.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{method},{variant},{k},{sample},{},{:.6}",
            record.dataset,
            record.metric.id(),
            record.value
        );
    }
    Ok(out)
}

pub fn parse_scores_csv(text: &str) -> Result<Vec<ScoreRecord>, ExperimentError> {
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let bad = |message: String| ExperimentError::Data(format!("scores line {}: {message}", i + 1));
        if fields.len() != 7 {
            return Err(bad(format!("expected 7 fields, got {}", fields.len())));
        }
        let method = MethodSpec::from_csv_fields(fields[1], fields[2])
            .ok_or_else(|| bad(format!("unknown method {:?}/{:?}", fields[1], fields[2])))?;
        let parse_opt = |s: &str| -> Result<Option<usize>, ExperimentError> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| bad(format!("bad integer {s:?}")))
            }
        };
        let metric = Metric::from_id(fields[5])
            .ok_or_else(|| bad(format!("unknown metric {:?}", fields[5])))?;
        let value: f64 = fields[6]
            .parse()
            .map_err(|_| bad(format!("bad value {:?}", fields[6])))?;
        records.push(ScoreRecord {
            dataset: fields[0].to_string(),
            method,
            k: parse_opt(fields[3])?,
            sample_id: parse_opt(fields[4])?,
            metric,
            value,
        });
    }
    Ok(records)
}

/// Closed-form record count for a configuration, given each dataset's label
/// count: `sum_datasets (|non-random methods| + sum_k min(samples,
/// universe(n,k))) * |metrics|`.
pub fn expected_record_count(
    config: &ExperimentConfig,
    label_counts: &[(String, usize)],
) -> Result<u128, ExperimentError> {
    let methods = config.method_specs();
    let non_random = methods.iter().filter(|m| **m != MethodSpec::Rakeld).count() as u128;
    let has_rakeld = methods.contains(&MethodSpec::Rakeld);
    let metrics = config.metric_list().len() as u128;
    let mut total = 0u128;
    for (_, n) in label_counts {
        let mut per_dataset = non_random;
        if has_rakeld {
            for k in k_list(config, *n) {
                let universe = count_partitions(*n, k)
                    .map_err(|e| ExperimentError::Internal(e.to_string()))?;
                per_dataset += universe.min(config.samples_per_k as u128);
            }
        }
        total += per_dataset * metrics;
    }
    Ok(total)
}

fn k_list(config: &ExperimentConfig, num_labels: usize) -> Vec<usize> {
    match &config.k_values {
        Some(values) => {
            let mut list: Vec<usize> = values
                .iter()
                .copied()
                .filter(|&k| k >= 1 && k <= num_labels)
                .collect();
            list.sort_unstable();
            list.dedup();
            list
        }
        None => k_for_percentages(num_labels, &config.k_percentages),
    }
}

fn cell_seed(base: u64, dataset: &str, tag: &str) -> u64 {
    fnv1a(format!("{base}:{dataset}:{tag}").as_bytes())
}

/// Everything needed to score one arm.
enum Work {
    BinaryRelevance,
    Ensemble {
        method: MethodSpec,
        partition: LabelPartition,
        k: Option<usize>,
        sample_id: Option<usize>,
    },
}

/// Runs the configured experiment matrix. Per-dataset failures (unreadable
/// files, detector non-convergence) are recorded as warnings and skipped.
pub fn cmd_run(config: &ExperimentConfig) -> Result<RunOutput, ExperimentError> {
    config.validate()?;
    let methods = config.method_specs();
    let metrics = config.metric_list();
    let mut records = Vec::new();
    let mut warnings = Vec::new();

    for entry in &config.datasets {
        let pair = match load_pair(&entry.train, &entry.test, &entry.labels) {
            Ok(pair) => pair,
            Err(err) => {
                warnings.push(format!("dataset {}: {err}", entry.name));
                continue;
            }
        };
        match run_dataset(config, &entry.name, &pair, &methods, &metrics) {
            Ok((mut dataset_records, mut dataset_warnings)) => {
                records.append(&mut dataset_records);
                warnings.append(&mut dataset_warnings);
            }
            Err(err) => warnings.push(format!("dataset {}: {err}", entry.name)),
        }
    }
    Ok(RunOutput { records, warnings })
}

fn run_dataset(
    config: &ExperimentConfig,
    dataset_name: &str,
    pair: &DatasetPair,
    methods: &[MethodSpec],
    metrics: &[Metric],
) -> Result<(Vec<ScoreRecord>, Vec<String>), ExperimentError> {
    let num_labels = pair.train.num_labels();
    let mut warnings = Vec::new();

    let needs_weighted = methods
        .iter()
        .any(|m| matches!(m, MethodSpec::Detector { weighted: true, .. }));
    let needs_unweighted = methods
        .iter()
        .any(|m| matches!(m, MethodSpec::Detector { weighted: false, .. }));
    let internal = |e: &dyn std::fmt::Display| ExperimentError::Internal(e.to_string());
    let weighted_graph = if needs_weighted {
        Some(build_cooccurrence_graph(&pair.train.labels, true).map_err(|e| internal(&e))?)
    } else {
        None
    };
    let unweighted_graph = if needs_unweighted {
        Some(build_cooccurrence_graph(&pair.train.labels, false).map_err(|e| internal(&e))?)
    } else {
        None
    };

    let mut work_items: Vec<Work> = Vec::new();
    for method in methods {
        match method {
            MethodSpec::BinaryRelevance => work_items.push(Work::BinaryRelevance),
            MethodSpec::LabelPowerset => work_items.push(Work::Ensemble {
                method: *method,
                partition: LabelPartition::single_block(num_labels),
                k: None,
                sample_id: None,
            }),
            MethodSpec::Detector {
                algorithm,
                weighted,
            } => {
                let graph = if *weighted {
                    weighted_graph.as_ref().unwrap()
                } else {
                    unweighted_graph.as_ref().unwrap()
                };
                let detector_config = community::DetectorConfig {
                    algorithm: *algorithm,
                    use_weights: *weighted,
                    rng_seed: cell_seed(config.seed, dataset_name, &method.id()),
                    ..community::DetectorConfig::new(*algorithm)
                };
                match community::detect(graph, &detector_config) {
                    Ok(partition) => work_items.push(Work::Ensemble {
                        method: *method,
                        partition: LabelPartition::from_community(&partition),
                        k: None,
                        sample_id: None,
                    }),
                    Err(err) => {
                        warnings.push(format!("{dataset_name}/{}: {err}", method.id()));
                    }
                }
            }
            MethodSpec::Rakeld => {
                for k in k_list(config, num_labels) {
                    let seed = cell_seed(config.seed, dataset_name, &format!("rakeld:k={k}"));
                    let partitions =
                        sample_partitions(num_labels, k, config.samples_per_k, seed)
                            .map_err(|e| internal(&e))?;
                    for (sample_id, partition) in partitions.into_iter().enumerate() {
                        work_items.push(Work::Ensemble {
                            method: *method,
                            partition,
                            k: Some(k),
                            sample_id: Some(sample_id),
                        });
                    }
                }
            }
        }
    }

    let params = config.cart.to_params(config.seed);
    let results: Vec<Result<Vec<ScoreRecord>, String>> = work_items
        .par_iter()
        .map(|work|
            score_work(work, pair, dataset_name, &params, metrics).map_err(|e| e.to_string()))
        .collect();

    let mut records = Vec::new();
    for result in results {
        match result {
            Ok(mut cell_records) => records.append(&mut cell_records),
            Err(message) => warnings.push(format!("{dataset_name}: {message}")),
        }
    }
    Ok((records, warnings))
}

fn score_work(
    work: &Work,
    pair: &DatasetPair,
    dataset_name: &str,
    params: &crate::cart::CartParams,
    metrics: &[Metric],
) -> Result<Vec<ScoreRecord>, ExperimentError> {
    let internal = |e: &dyn std::fmt::Display| ExperimentError::Internal(e.to_string());
    let (method, predicted, k, sample_id) = match work {
        Work::BinaryRelevance => {
            let models = br_train(&pair.train, params).map_err(|e| internal(&e))?;
            let predicted =
                br_predict_matrix(&models, &pair.test.features).map_err(|e| internal(&e))?;
            (MethodSpec::BinaryRelevance, predicted, None, None)
        }
        Work::Ensemble {
            method,
            partition,
            k,
            sample_id,
        } => {
            let model =
                ensemble_train(&pair.train, partition, params).map_err(|e| internal(&e))?;
            let predicted = model
                .predict_matrix(&pair.test.features)
                .map_err(|e| internal(&e))?;
            (*method, predicted, *k, *sample_id)
        }
    };
    score_predictions(dataset_name, method, k, sample_id, &pair.test.labels, predicted, metrics)
}

fn score_predictions(
    dataset: &str,
    method: MethodSpec,
    k: Option<usize>,
    sample_id: Option<usize>,
    truth: &LabelMatrix,
    predicted: LabelMatrix,
    metric_list: &[Metric],
) -> Result<Vec<ScoreRecord>, ExperimentError> {
    let batch = PredictionBatch::new(truth.clone(), predicted)
        .map_err(|e| ExperimentError::Internal(e.to_string()))?;
    Ok(metric_list
        .iter()
        .map(|&metric| ScoreRecord {
            dataset: dataset.to_string(),
            method,
            k,
            sample_id,
            metric,
            value: metrics::evaluate(&batch, metric),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(method: MethodSpec, k: Option<usize>, sample: Option<usize>) -> ScoreRecord {
        ScoreRecord {
            dataset: "toy".into(),
            method,
            k,
            sample_id: sample,
            metric: Metric::F1Micro,
            value: 0.5,
        }
    }

    #[test]
    fn csv_round_trips() {
        let records = vec![
            record(MethodSpec::BinaryRelevance, None, None),
            record(MethodSpec::Rakeld, Some(2), Some(7)),
            record(
                MethodSpec::Detector {
                    algorithm: crate::community::Algorithm::FastGreedy,
                    weighted: true,
                },
                None,
                None,
            ),
        ];
        let csv = scores_to_csv(&records).unwrap();
        assert!(csv.starts_with("dataset,method,variant,k,sample_id,metric,value\n"));
        let parsed = parse_scores_csv(&csv).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn rakeld_records_require_coordinates() {
        let bad = record(MethodSpec::Rakeld, None, None);
        assert!(scores_to_csv(&[bad]).is_err());
    }

    #[test]
    fn empty_record_list_yields_header_only() {
        assert_eq!(
            scores_to_csv(&[]).unwrap(),
            "dataset,method,variant,k,sample_id,metric,value\n"
        );
    }
}
