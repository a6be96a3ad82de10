//! Experiment configuration: a JSON file naming datasets, methods, the
//! RAkELd sampling design, CART parameters, metrics, and the output
//! directory.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::cart::CartParams;
use crate::community::Algorithm;
use crate::metrics::Metric;

use super::ExperimentError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetEntry {
    pub name: String,
    pub train: PathBuf,
    pub test: PathBuf,
    pub labels: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartConfig {
    #[serde(default)]
    pub max_depth: Option<usize>,
    #[serde(default = "default_min_samples_split")]
    pub min_samples_split: usize,
}

fn default_min_samples_split() -> usize {
    2
}

impl Default for CartConfig {
    fn default() -> Self {
        Self {
            max_depth: None,
            min_samples_split: 2,
        }
    }
}

impl CartConfig {
    pub fn to_params(&self, seed: u64) -> CartParams {
        CartParams {
            max_depth: self.max_depth,
            min_samples_split: self.min_samples_split,
            rng_seed: seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetEntry>,
    #[serde(default = "default_methods")]
    pub methods: Vec<String>,
    /// Percentages of the label count tried as RAkELd block sizes.
    #[serde(default = "default_k_percentages")]
    pub k_percentages: Vec<u32>,
    /// Explicit block sizes overriding `k_percentages` when present.
    #[serde(default)]
    pub k_values: Option<Vec<usize>>,
    #[serde(default = "default_samples_per_k")]
    pub samples_per_k: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub cart: CartConfig,
    #[serde(default = "default_metric_ids")]
    pub metrics: Vec<String>,
    pub output_dir: PathBuf,
}

fn default_methods() -> Vec<String> {
    MethodSpec::all().iter().map(MethodSpec::id).collect()
}

fn default_k_percentages() -> Vec<u32> {
    (1..=9).map(|i| i * 10).collect()
}

fn default_samples_per_k() -> usize {
    250
}

fn default_metric_ids() -> Vec<String> {
    Metric::ALL.iter().map(|m| m.id().to_string()).collect()
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.samples_per_k < 1 {
            return Err(ExperimentError::Config(
                "samples_per_k must be >= 1".into(),
            ));
        }
        if self.k_percentages.iter().any(|&p| p == 0 || p >= 100) {
            return Err(ExperimentError::Config(
                "k_percentages must lie in (0, 100)".into(),
            ));
        }
        if let Some(values) = &self.k_values {
            if values.contains(&0) {
                return Err(ExperimentError::Config("k_values must be >= 1".into()));
            }
        }
        let mut names: Vec<&str> = self.datasets.iter().map(|d| d.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != self.datasets.len() {
            return Err(ExperimentError::Config("duplicate dataset names".into()));
        }
        for id in &self.methods {
            if MethodSpec::parse(id).is_none() {
                return Err(ExperimentError::Config(format!("unknown method {id:?}")));
            }
        }
        for id in &self.metrics {
            if Metric::from_id(id).is_none() {
                return Err(ExperimentError::Config(format!("unknown metric {id:?}")));
            }
        }
        Ok(())
    }

    pub fn method_specs(&self) -> Vec<MethodSpec> {
        self.methods
            .iter()
            .map(|id| MethodSpec::parse(id).expect("validated"))
            .collect()
    }

    pub fn metric_list(&self) -> Vec<Metric> {
        self.metrics
            .iter()
            .map(|id| Metric::from_id(id).expect("validated"))
            .collect()
    }
}

/// One experiment arm: an a priori transform, the random baseline, or a
/// community detector on the weighted or unweighted graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSpec {
    BinaryRelevance,
    LabelPowerset,
    Rakeld,
    Detector { algorithm: Algorithm, weighted: bool },
}

impl MethodSpec {
    pub fn all() -> Vec<MethodSpec> {
        let mut list = vec![
            MethodSpec::BinaryRelevance,
            MethodSpec::LabelPowerset,
            MethodSpec::Rakeld,
        ];
        for algorithm in Algorithm::ALL {
            list.push(MethodSpec::Detector {
                algorithm,
                weighted: false,
            });
            list.push(MethodSpec::Detector {
                algorithm,
                weighted: true,
            });
        }
        list
    }

    /// Display id; detectors carry a `-weighted` suffix in weighted mode.
    pub fn id(&self) -> String {
        match self {
            MethodSpec::BinaryRelevance => "BR".into(),
            MethodSpec::LabelPowerset => "LP".into(),
            MethodSpec::Rakeld => "rakeld".into(),
            MethodSpec::Detector {
                algorithm,
                weighted,
            } => {
                if *weighted {
                    format!("{}-weighted", algorithm.id())
                } else {
                    algorithm.id().to_string()
                }
            }
        }
    }

    pub fn parse(id: &str) -> Option<MethodSpec> {
        match id {
            "BR" | "br" => Some(MethodSpec::BinaryRelevance),
            "LP" | "lp" => Some(MethodSpec::LabelPowerset),
            "rakeld" => Some(MethodSpec::Rakeld),
            _ => {
                let (base, weighted) = match id.strip_suffix("-weighted") {
                    Some(base) => (base, true),
                    None => (id, false),
                };
                Algorithm::from_id(base).map(|algorithm| MethodSpec::Detector {
                    algorithm,
                    weighted,
                })
            }
        }
    }

    /// `(method, variant)` columns for the scores CSV.
    pub fn csv_fields(&self) -> (String, String) {
        match self {
            MethodSpec::Detector {
                algorithm,
                weighted,
            } => (
                algorithm.id().to_string(),
                if *weighted { "weighted" } else { "unweighted" }.to_string(),
            ),
            other => (other.id(), String::new()),
        }
    }

    pub fn from_csv_fields(method: &str, variant: &str) -> Option<MethodSpec> {
        match variant {
            "" => MethodSpec::parse(method),
            "weighted" => Algorithm::from_id(method).map(|algorithm| MethodSpec::Detector {
                algorithm,
                weighted: true,
            }),
            "unweighted" => Algorithm::from_id(method).map(|algorithm| MethodSpec::Detector {
                algorithm,
                weighted: false,
            }),
            _ => None,
        }
    }

    pub fn is_data_driven(&self) -> bool {
        matches!(self, MethodSpec::Detector { .. })
    }

    pub fn is_apriori(&self) -> bool {
        matches!(self, MethodSpec::BinaryRelevance | MethodSpec::LabelPowerset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_ids_round_trip() {
        for spec in MethodSpec::all() {
            assert_eq!(MethodSpec::parse(&spec.id()), Some(spec));
            let (method, variant) = spec.csv_fields();
            assert_eq!(MethodSpec::from_csv_fields(&method, &variant), Some(spec));
        }
    }

    #[test]
    fn default_method_list_has_thirteen_arms() {
        assert_eq!(default_methods().len(), 13);
    }

    #[test]
    fn config_parses_with_defaults() {
        let json = r#"{
            "datasets": [
                {"name": "toy", "train": "t.arff", "test": "s.arff", "labels": "l.xml"}
            ],
            "output_dir": "out"
        }"#;
        let config = ExperimentConfig::from_json(json).unwrap();
        assert_eq!(config.samples_per_k, 250);
        assert_eq!(config.k_percentages, vec![10, 20, 30, 40, 50, 60, 70, 80, 90]);
        assert_eq!(config.methods.len(), 13);
        assert_eq!(config.metrics.len(), 5);
    }

    #[test]
    fn config_rejects_bad_fields() {
        let json = r#"{"datasets": [], "output_dir": "out", "samples_per_k": 0}"#;
        assert!(ExperimentConfig::from_json(json).is_err());
        let json = r#"{"datasets": [], "output_dir": "out", "k_percentages": [0]}"#;
        assert!(ExperimentConfig::from_json(json).is_err());
        let json = r#"{"datasets": [], "output_dir": "out", "methods": ["bogus"]}"#;
        assert!(ExperimentConfig::from_json(json).is_err());
        let json = r#"{"datasets": [], "output_dir": "out", "unknown_field": 1}"#;
        assert!(ExperimentConfig::from_json(json).is_err());
    }
}
