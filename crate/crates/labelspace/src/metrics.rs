//! Multi-label evaluation measures.
//!
//! Three example-based measures (Hamming loss, subset accuracy, Jaccard
//! similarity) and label-based F1 under micro and macro averaging. Zero
//! division conventions: a per-row Jaccard 0/0 counts as 1 (two empty sets
//! agree perfectly), while F1 precision/recall/harmonic 0/0 counts as 0.

use thiserror::Error;

use crate::dataset::LabelMatrix;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("prediction batch is empty")]
    EmptyBatch,
    #[error("truth is {truth_rows}x{truth_cols} but prediction is {pred_rows}x{pred_cols}")]
    ShapeMismatch {
        truth_rows: usize,
        truth_cols: usize,
        pred_rows: usize,
        pred_cols: usize,
    },
}

/// The five measures, with their optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    HammingLoss,
    SubsetAccuracy,
    Jaccard,
    F1Micro,
    F1Macro,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::HammingLoss,
        Metric::SubsetAccuracy,
        Metric::Jaccard,
        Metric::F1Micro,
        Metric::F1Macro,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Metric::HammingLoss => "hamming-loss",
            Metric::SubsetAccuracy => "subset-accuracy",
            Metric::Jaccard => "jaccard",
            Metric::F1Micro => "f1-micro",
            Metric::F1Macro => "f1-macro",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Metric::ALL.into_iter().find(|m| m.id() == id)
    }

    /// `false` only for Hamming loss.
    pub fn higher_is_better(&self) -> bool {
        !matches!(self, Metric::HammingLoss)
    }
}

/// Paired truth/prediction matrices of identical shape, validated non-empty.
#[derive(Debug, Clone)]
pub struct PredictionBatch {
    truth: LabelMatrix,
    predicted: LabelMatrix,
}

impl PredictionBatch {
    pub fn new(truth: LabelMatrix, predicted: LabelMatrix) -> Result<Self, MetricsError> {
        if truth.num_rows() != predicted.num_rows() || truth.num_cols() != predicted.num_cols() {
            return Err(MetricsError::ShapeMismatch {
                truth_rows: truth.num_rows(),
                truth_cols: truth.num_cols(),
                pred_rows: predicted.num_rows(),
                pred_cols: predicted.num_cols(),
            });
        }
        if truth.num_rows() == 0 || truth.num_cols() == 0 {
            return Err(MetricsError::EmptyBatch);
        }
        Ok(Self { truth, predicted })
    }

    pub fn truth(&self) -> &LabelMatrix {
        &self.truth
    }

    pub fn predicted(&self) -> &LabelMatrix {
        &self.predicted
    }

    pub fn num_instances(&self) -> usize {
        self.truth.num_rows()
    }

    pub fn num_labels(&self) -> usize {
        self.truth.num_cols()
    }
}

/// Per-label true/false positive/negative counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub tp: Vec<u64>,
    pub fp: Vec<u64>,
    pub fn_: Vec<u64>,
    pub tn: Vec<u64>,
}

impl ConfusionCounts {
    pub fn from_batch(batch: &PredictionBatch) -> Self {
        let labels = batch.num_labels();
        let mut counts = Self {
            tp: vec![0; labels],
            fp: vec![0; labels],
            fn_: vec![0; labels],
            tn: vec![0; labels],
        };
        for i in 0..batch.num_instances() {
            let truth = batch.truth.row(i);
            let pred = batch.predicted.row(i);
            for j in 0..labels {
                match (truth[j], pred[j]) {
                    (1, 1) => counts.tp[j] += 1,
                    (0, 1) => counts.fp[j] += 1,
                    (1, 0) => counts.fn_[j] += 1,
                    _ => counts.tn[j] += 1,
                }
            }
        }
        counts
    }
}

/// Mean fraction of label bits that differ between prediction and truth.
/// Computed as one exact integer mismatch count over `instances * labels`,
/// which equals the mean of per-instance fractions.
pub fn hamming_loss(batch: &PredictionBatch) -> f64 {
    let mut mismatches = 0u64;
    for i in 0..batch.num_instances() {
        mismatches += batch
            .truth
            .row(i)
            .iter()
            .zip(batch.predicted.row(i))
            .filter(|(t, p)| t != p)
            .count() as u64;
    }
    mismatches as f64 / (batch.num_instances() as u64 * batch.num_labels() as u64) as f64
}

/// Fraction of instances predicted exactly.
pub fn subset_accuracy(batch: &PredictionBatch) -> f64 {
    let exact = (0..batch.num_instances())
        .filter(|&i| batch.truth.row(i) == batch.predicted.row(i))
        .count();
    exact as f64 / batch.num_instances() as f64
}

/// Mean per-instance |intersection| / |union|, with 0/0 counting as 1.
pub fn jaccard_score(batch: &PredictionBatch) -> f64 {
    let mut sum = 0.0;
    for i in 0..batch.num_instances() {
        let mut intersection = 0u64;
        let mut union = 0u64;
        for (t, p) in batch.truth.row(i).iter().zip(batch.predicted.row(i)) {
            if *t == 1 && *p == 1 {
                intersection += 1;
            }
            if *t == 1 || *p == 1 {
                union += 1;
            }
        }
        sum += if union == 0 {
            1.0
        } else {
            intersection as f64 / union as f64
        };
    }
    sum / batch.num_instances() as f64
}

fn f1_from_counts(tp: u64, fp: u64, fn_: u64) -> f64 {
    let precision = if tp + fp == 0 {
        0.0
    } else {
        tp as f64 / (tp + fp) as f64
    };
    let recall = if tp + fn_ == 0 {
        0.0
    } else {
        tp as f64 / (tp + fn_) as f64
    };
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// F1 over globally aggregated confusion counts.
pub fn f1_micro(batch: &PredictionBatch) -> f64 {
    let counts = ConfusionCounts::from_batch(batch);
    let tp: u64 = counts.tp.iter().sum();
    let fp: u64 = counts.fp.iter().sum();
    let fn_: u64 = counts.fn_.iter().sum();
    f1_from_counts(tp, fp, fn_)
}

/// Mean of per-label F1 scores, each label weighted equally.
pub fn f1_macro(batch: &PredictionBatch) -> f64 {
    let counts = ConfusionCounts::from_batch(batch);
    let labels = batch.num_labels();
    let sum: f64 = (0..labels)
        .map(|j| f1_from_counts(counts.tp[j], counts.fp[j], counts.fn_[j]))
        .sum();
    sum / labels as f64
}

pub fn evaluate(batch: &PredictionBatch, metric: Metric) -> f64 {
    match metric {
        Metric::HammingLoss => hamming_loss(batch),
        Metric::SubsetAccuracy => subset_accuracy(batch),
        Metric::Jaccard => jaccard_score(batch),
        Metric::F1Micro => f1_micro(batch),
        Metric::F1Macro => f1_macro(batch),
    }
}
