//! Likelihood-of-beating-random computation and the statistical comparison
//! harness: per-dataset likelihood tables, cross-dataset aggregates, the
//! Friedman omnibus test with the Iman-Davenport F correction, and Rom's
//! step-up post-hoc procedure against a control method.

pub mod special;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::metrics::Metric;
use special::{f_cdf, normal_cdf};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("random score pool is empty")]
    EmptyRandomScores,
    #[error("need at least {needed} datasets, got {got}")]
    TooFewDatasets { needed: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("csv parse error at line {line}: {message}")]
    Csv { line: usize, message: String },
}

/// Optimization direction of a score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    HigherIsBetter,
    LowerIsBetter,
}

impl Direction {
    pub fn for_metric(metric: Metric) -> Self {
        if metric.higher_is_better() {
            Direction::HigherIsBetter
        } else {
            Direction::LowerIsBetter
        }
    }

    /// Is `candidate` strictly worse than `reference`?
    fn strictly_worse(self, candidate: f64, reference: f64) -> bool {
        match self {
            Direction::HigherIsBetter => candidate < reference,
            Direction::LowerIsBetter => candidate > reference,
        }
    }

    /// Is `a` strictly better than `b`?
    fn strictly_better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::HigherIsBetter => a > b,
            Direction::LowerIsBetter => a < b,
        }
    }
}

/// Fraction of `random_scores` strictly worse than `method_score`; ties do
/// not count as worse.
pub fn likelihood_better(
    method_score: f64,
    random_scores: &[f64],
    direction: Direction,
) -> Result<f64, StatsError> {
    if random_scores.is_empty() {
        return Err(StatsError::EmptyRandomScores);
    }
    let worse = random_scores
        .iter()
        .filter(|&&r| direction.strictly_worse(r, method_score))
        .count();
    Ok(worse as f64 / random_scores.len() as f64)
}

/// Cross-dataset summary of likelihood values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub std: f64,
}

/// Min / median / mean / sample standard deviation (n-1) of per-dataset
/// likelihoods. The median of an even count is the midpoint average. Needs
/// at least two values for the standard deviation.
pub fn aggregate_likelihoods(values: &[f64]) -> Result<Aggregate, StatsError> {
    if values.len() < 2 {
        return Err(StatsError::TooFewDatasets {
            needed: 2,
            got: values.len(),
        });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let variance = sorted.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    Ok(Aggregate {
        min: sorted[0],
        median,
        mean,
        std: variance.sqrt(),
    })
}

/// Per-(dataset, method, metric) likelihoods of beating the random baseline.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LikelihoodTable {
    entries: BTreeMap<(String, String, Metric), f64>,
}

impl LikelihoodTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, dataset: &str, method: &str, metric: Metric, likelihood: f64) {
        debug_assert!((0.0..=1.0).contains(&likelihood));
        self.entries
            .insert((dataset.into(), method.into(), metric), likelihood);
    }

    pub fn get(&self, dataset: &str, method: &str, metric: Metric) -> Option<f64> {
        self.entries
            .get(&(dataset.to_string(), method.to_string(), metric))
            .copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
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

    /// Likelihoods of one (method, metric) across datasets, dataset-sorted.
    pub fn values_for(&self, method: &str, metric: Metric) -> Vec<f64> {
        self.entries
            .iter()
            .filter(|((_, m, k), _)| m == method && *k == metric)
            .map(|(_, &v)| v)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(String, String, Metric), &f64)> {
        self.entries.iter()
    }

    /// `dataset,method,metric,likelihood` rows, 6-decimal fixed point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dataset,method,metric,likelihood\n");
        for ((dataset, method, metric), value) in &self.entries {
            let _ = writeln!(out, "{dataset},{method},{},{value:.6}", metric.id());
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, StatsError> {
        let mut table = Self::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 || line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(StatsError::Csv {
                    line: i + 1,
                    message: format!("expected 4 fields, got {}", fields.len()),
                });
            }
            let metric = Metric::from_id(fields[2]).ok_or_else(|| StatsError::Csv {
                line: i + 1,
                message: format!("unknown metric {:?}", fields[2]),
            })?;
            let value: f64 = fields[3].parse().map_err(|_| StatsError::Csv {
                line: i + 1,
                message: format!("bad likelihood {:?}", fields[3]),
            })?;
            table.insert(fields[0], fields[1], metric, value);
        }
        Ok(table)
    }
}

/// Aggregates per (method, metric), with the same CSV round-trip contract.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AggregateTable {
    entries: BTreeMap<(String, Metric), Aggregate>,
}

impl AggregateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, method: &str, metric: Metric, aggregate: Aggregate) {
        self.entries.insert((method.into(), metric), aggregate);
    }

    pub fn get(&self, method: &str, metric: Metric) -> Option<Aggregate> {
        self.entries.get(&(method.to_string(), metric)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(String, Metric), &Aggregate)> {
        self.entries.iter()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,metric,min,median,mean,std\n");
        for ((method, metric), a) in &self.entries {
            let _ = writeln!(
                out,
                "{method},{},{:.6},{:.6},{:.6},{:.6}",
                metric.id(),
                a.min,
                a.median,
                a.mean,
                a.std
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, StatsError> {
        let mut table = Self::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 || line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                return Err(StatsError::Csv {
                    line: i + 1,
                    message: format!("expected 6 fields, got {}", fields.len()),
                });
            }
            let metric = Metric::from_id(fields[1]).ok_or_else(|| StatsError::Csv {
                line: i + 1,
                message: format!("unknown metric {:?}", fields[1]),
            })?;
            let parse = |s: &str| -> Result<f64, StatsError> {
                s.parse().map_err(|_| StatsError::Csv {
                    line: i + 1,
                    message: format!("bad number {s:?}"),
                })
            };
            table.insert(
                fields[0],
                metric,
                Aggregate {
                    min: parse(fields[2])?,
                    median: parse(fields[3])?,
                    mean: parse(fields[4])?,
                    std: parse(fields[5])?,
                },
            );
        }
        Ok(table)
    }
}

/// Score matrix (datasets x methods) with per-dataset average ranks (ties
/// averaged) and the resulting mean rank per method.
#[derive(Debug, Clone)]
pub struct RankMatrix {
    pub scores: Vec<Vec<f64>>,
    pub ranks: Vec<Vec<f64>>,
    pub mean_ranks: Vec<f64>,
}

impl RankMatrix {
    pub fn new(scores: Vec<Vec<f64>>, direction: Direction) -> Result<Self, StatsError> {
        let n = scores.len();
        if n == 0 {
            return Err(StatsError::TooFewDatasets { needed: 1, got: 0 });
        }
        let k = scores[0].len();
        if k < 2 {
            return Err(StatsError::InvalidInput(
                "need at least two methods to rank".into(),
            ));
        }
        if scores.iter().any(|row| row.len() != k) {
            return Err(StatsError::InvalidInput(
                "ragged score matrix".into(),
            ));
        }
        let ranks: Vec<Vec<f64>> = scores.iter().map(|row| rank_row(row, direction)).collect();
        let mean_ranks: Vec<f64> = (0..k)
            .map(|j| ranks.iter().map(|r| r[j]).sum::<f64>() / n as f64)
            .collect();
        Ok(Self {
            scores,
            ranks,
            mean_ranks,
        })
    }
}

/// Average rank of each entry in one dataset row; rank 1 is best.
fn rank_row(row: &[f64], direction: Direction) -> Vec<f64> {
    let k = row.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        if direction.strictly_better(row[a], row[b]) {
            std::cmp::Ordering::Less
        } else if direction.strictly_better(row[b], row[a]) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    let mut ranks = vec![0.0; k];
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j + 1 < k && row[order[j + 1]] == row[order[i]] {
            j += 1;
        }
        // Positions i..=j share the averaged rank.
        let average = (i + j + 2) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = average;
        }
        i = j + 1;
    }
    ranks
}

/// Mean ranks of methods over datasets (rank 1 = best).
pub fn friedman_ranks(
    scores: &[Vec<f64>],
    direction: Direction,
) -> Result<Vec<f64>, StatsError> {
    Ok(RankMatrix::new(scores.to_vec(), direction)?.mean_ranks)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImanDavenport {
    pub chi2: f64,
    pub f_stat: f64,
    pub df1: usize,
    pub df2: usize,
    pub p: f64,
    /// Perfect separation: the Friedman statistic reached its maximum and
    /// the F correction degenerates; `p` is reported as 0.
    pub degenerate: bool,
}

/// Friedman chi-squared with the Iman-Davenport F correction:
/// `chi2 = 12N/(k(k+1)) * (sum R_j^2 - k(k+1)^2/4)`,
/// `F = (N-1) chi2 / (N(k-1) - chi2)` on `(k-1, (k-1)(N-1))` degrees of
/// freedom.
pub fn iman_davenport(mean_ranks: &[f64], n_datasets: usize) -> Result<ImanDavenport, StatsError> {
    let k = mean_ranks.len();
    if n_datasets < 2 || k < 2 {
        return Err(StatsError::TooFewDatasets {
            needed: 2,
            got: n_datasets.min(k),
        });
    }
    let n = n_datasets as f64;
    let kf = k as f64;
    let sum_squares: f64 = mean_ranks.iter().map(|r| r * r).sum();
    let chi2 = (12.0 * n / (kf * (kf + 1.0))) * (sum_squares - kf * (kf + 1.0).powi(2) / 4.0);
    let df1 = k - 1;
    let df2 = (k - 1) * (n_datasets - 1);
    let denominator = n * (kf - 1.0) - chi2;
    if denominator.abs() < 1e-9 {
        return Ok(ImanDavenport {
            chi2,
            f_stat: f64::INFINITY,
            df1,
            df2,
            p: 0.0,
            degenerate: true,
        });
    }
    let f_stat = (n - 1.0) * chi2 / denominator;
    let p = 1.0 - f_cdf(f_stat, df1 as f64, df2 as f64);
    Ok(ImanDavenport {
        chi2,
        f_stat,
        df1,
        df2,
        p,
        degenerate: false,
    })
}

/// Rom's step-up critical values `c_1 >= c_2 >= ... >= c_m` for familywise
/// level `alpha`: `c_1 = alpha`, `c_2 = alpha/2`, and then
/// `c_i = (sum_{j=1}^{i-1} alpha^j - sum_{j=1}^{i-2} C(i,j) c_{i-j}^{j+1}) / i`.
pub fn rom_thresholds(m: usize, alpha: f64) -> Vec<f64> {
    let mut thresholds = Vec::with_capacity(m);
    for i in 1..=m {
        if i == 1 {
            thresholds.push(alpha);
            continue;
        }
        let mut sum_alpha = 0.0;
        let mut alpha_power = 1.0;
        for _ in 1..i {
            alpha_power *= alpha;
            sum_alpha += alpha_power;
        }
        let mut correction = 0.0;
        for j in 1..=i.saturating_sub(2) {
            correction += binomial_f64(i, j) * thresholds[i - j - 1].powi(j as i32 + 1);
        }
        thresholds.push((sum_alpha - correction) / i as f64);
    }
    thresholds
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    let mut result = 1.0;
    for i in 0..k {
        result = result * (n - i) as f64 / (i + 1) as f64;
    }
    result
}

/// Step-up decisions: p-values are ordered descending against
/// `c_1, c_2, ...`; the first index where `p <= c` rejects that hypothesis
/// and every smaller p-value.
pub fn rom_stepup_decisions(p_values: &[f64], alpha: f64) -> Vec<bool> {
    let m = p_values.len();
    let thresholds = rom_thresholds(m, alpha);
    let mut order: Vec<usize> = (0..m).collect();
    // Descending p; ties keep index order.
    order.sort_by(|&a, &b| p_values[b].partial_cmp(&p_values[a]).unwrap());
    let mut decisions = vec![false; m];
    for (position, &idx) in order.iter().enumerate() {
        if p_values[idx] <= thresholds[position] {
            for &rest in &order[position..] {
                decisions[rest] = true;
            }
            break;
        }
    }
    decisions
}

#[derive(Debug, Clone, PartialEq)]
pub struct RomComparison {
    pub method_index: usize,
    pub z: f64,
    /// One-sided p-value of "method is better than the control".
    pub p: f64,
    /// Rom critical value at this comparison's step-up position.
    pub threshold: f64,
    pub significant: bool,
}

/// One-sided Rom post-hoc comparisons of every method against the control:
/// `z_i = (R_control - R_i) / sqrt(k(k+1)/(6N))`, p from the standard normal
/// tail, significance by the step-up procedure.
pub fn rom_posthoc(
    mean_ranks: &[f64],
    n_datasets: usize,
    control_index: usize,
    alpha: f64,
) -> Result<Vec<RomComparison>, StatsError> {
    let k = mean_ranks.len();
    if control_index >= k {
        return Err(StatsError::InvalidInput(format!(
            "control index {control_index} out of range for {k} methods"
        )));
    }
    if n_datasets == 0 {
        return Err(StatsError::TooFewDatasets { needed: 1, got: 0 });
    }
    let scale = (k as f64 * (k as f64 + 1.0) / (6.0 * n_datasets as f64)).sqrt();
    let others: Vec<usize> = (0..k).filter(|&i| i != control_index).collect();
    let p_values: Vec<f64> = others
        .iter()
        .map(|&i| {
            let z = (mean_ranks[control_index] - mean_ranks[i]) / scale;
            1.0 - normal_cdf(z)
        })
        .collect();
    let decisions = rom_stepup_decisions(&p_values, alpha);
    let thresholds = rom_thresholds(others.len(), alpha);
    let mut order: Vec<usize> = (0..others.len()).collect();
    order.sort_by(|&a, &b| p_values[b].partial_cmp(&p_values[a]).unwrap());
    let mut position_of = vec![0usize; others.len()];
    for (position, &idx) in order.iter().enumerate() {
        position_of[idx] = position;
    }
    Ok(others
        .iter()
        .enumerate()
        .map(|(slot, &method_index)| RomComparison {
            method_index,
            z: (mean_ranks[control_index] - mean_ranks[method_index]) / scale,
            p: p_values[slot],
            threshold: thresholds[position_of[slot]],
            significant: decisions[slot],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn likelihood_counts_strictly_worse() {
        let samples = [0.5, 0.6, 0.8, 0.9];
        assert_eq!(
            likelihood_better(0.7, &samples, Direction::HigherIsBetter).unwrap(),
            0.5
        );
        assert_eq!(
            likelihood_better(1.0, &samples, Direction::HigherIsBetter).unwrap(),
            1.0
        );
        assert_eq!(
            likelihood_better(0.1, &samples, Direction::HigherIsBetter).unwrap(),
            0.0
        );
        // Ties are not "worse".
        assert_eq!(
            likelihood_better(0.5, &[0.5, 0.5], Direction::HigherIsBetter).unwrap(),
            0.0
        );
        // Lower-is-better flips the comparison.
        assert_eq!(
            likelihood_better(0.7, &samples, Direction::LowerIsBetter).unwrap(),
            0.5
        );
        assert!(matches!(
            likelihood_better(0.5, &[], Direction::HigherIsBetter),
            Err(StatsError::EmptyRandomScores)
        ));
    }

    #[test]
    fn likelihood_is_monotone_in_the_method_score() {
        let samples = [0.2, 0.4, 0.4, 0.7, 0.9];
        let mut last = 0.0;
        for score in [0.0, 0.2, 0.3, 0.4, 0.5, 0.8, 0.95, 1.0] {
            let p = likelihood_better(score, &samples, Direction::HigherIsBetter).unwrap();
            assert!(p >= last);
            last = p;
        }
    }

    #[test]
    fn aggregate_simple_cases() {
        let all_equal = aggregate_likelihoods(&[0.3, 0.3, 0.3]).unwrap();
        assert_eq!(all_equal.min, 0.3);
        assert_eq!(all_equal.median, 0.3);
        assert_eq!(all_equal.mean, 0.3);
        assert_eq!(all_equal.std, 0.0);

        let two = aggregate_likelihoods(&[0.0, 1.0]).unwrap();
        assert_eq!(two.median, 0.5);
        assert!((two.std - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        assert!(matches!(
            aggregate_likelihoods(&[0.5]),
            Err(StatsError::TooFewDatasets { .. })
        ));
    }

    #[test]
    fn friedman_ranks_best_method_everywhere() {
        // Method 0 strictly best on all four datasets.
        let scores = vec![
            vec![0.9, 0.5, 0.4],
            vec![0.8, 0.6, 0.2],
            vec![0.9, 0.1, 0.5],
            vec![0.7, 0.3, 0.6],
        ];
        let ranks = friedman_ranks(&scores, Direction::HigherIsBetter).unwrap();
        assert_eq!(ranks[0], 1.0);
    }

    #[test]
    fn friedman_ranks_all_tied() {
        let scores = vec![vec![0.5; 4]; 3];
        let ranks = friedman_ranks(&scores, Direction::HigherIsBetter).unwrap();
        for r in ranks {
            assert_eq!(r, 2.5); // (k+1)/2 with k = 4
        }
    }

    #[test]
    fn friedman_ranks_hand_fixture() {
        // 3 methods x 4 datasets, hand-ranked; lower-is-better direction.
        let scores = vec![
            vec![0.1, 0.2, 0.3],
            vec![0.2, 0.1, 0.3],
            vec![0.1, 0.3, 0.2],
            vec![0.1, 0.2, 0.3],
        ];
        let ranks = friedman_ranks(&scores, Direction::LowerIsBetter).unwrap();
        assert_eq!(ranks, vec![1.25, 2.0, 2.75]);
    }

    #[test]
    fn rank_rows_sum_to_k_k_plus_one_over_two() {
        let scores = vec![vec![0.4, 0.4, 0.9, 0.1], vec![0.2, 0.2, 0.2, 0.2]];
        let matrix = RankMatrix::new(scores, Direction::HigherIsBetter).unwrap();
        for row in &matrix.ranks {
            let sum: f64 = row.iter().sum();
            assert_eq!(sum, 10.0); // 4*5/2
        }
    }

    #[test]
    fn iman_davenport_fixture() {
        let result = iman_davenport(&[1.25, 2.0, 2.75], 4).unwrap();
        assert!((result.chi2 - 4.5).abs() < 1e-12);
        assert!((result.f_stat - 27.0 / 7.0).abs() < 1e-12);
        assert_eq!((result.df1, result.df2), (2, 6));
        assert!(result.p > 0.08 && result.p < 0.09, "p = {}", result.p);
        assert!(!result.degenerate);
    }

    #[test]
    fn iman_davenport_all_tied() {
        let result = iman_davenport(&[2.0, 2.0, 2.0], 4).unwrap();
        assert!(result.chi2.abs() < 1e-12);
        assert!(result.f_stat.abs() < 1e-12);
        assert!((result.p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iman_davenport_perfect_separation_degenerates() {
        // Ranks (1, 2, 3) on every dataset: chi2 = N(k-1) = 8.
        let result = iman_davenport(&[1.0, 2.0, 3.0], 4).unwrap();
        assert!(result.degenerate);
        assert_eq!(result.p, 0.0);
    }

    #[test]
    fn rom_thresholds_match_published_values() {
        let t = rom_thresholds(5, 0.05);
        assert_eq!(t[0], 0.05);
        assert_eq!(t[1], 0.025);
        assert!((t[2] - 0.016_875).abs() < 1e-9);
        assert!((t[3] - 0.012_848_047).abs() < 1e-7);
        for w in t.windows(2) {
            assert!(w[0] > w[1], "thresholds must decrease");
        }
    }

    #[test]
    fn rom_single_comparison_uses_alpha_exactly() {
        assert_eq!(rom_thresholds(1, 0.05), vec![0.05]);
        let decisions = rom_stepup_decisions(&[0.049], 0.05);
        assert_eq!(decisions, vec![true]);
        let decisions = rom_stepup_decisions(&[0.051], 0.05);
        assert_eq!(decisions, vec![false]);
    }

    #[test]
    fn rom_posthoc_fixture() {
        // k = 12 methods, N = 12 datasets, control rank gap of 4.0.
        let mut ranks = vec![6.0; 12];
        ranks[0] = 8.0; // control
        ranks[1] = 4.0; // gap 4.0
        let out = rom_posthoc(&ranks, 12, 0, 0.05).unwrap();
        let target = out.iter().find(|c| c.method_index == 1).unwrap();
        assert!((target.z - 4.0 / (13.0f64 / 6.0).sqrt()).abs() < 1e-12);
        assert!((target.z - 2.7175).abs() < 1e-3);
        assert!((target.p - 0.0033).abs() < 2e-4, "p = {}", target.p);
    }

    #[test]
    fn rom_equal_rank_is_not_significant() {
        let ranks = vec![2.0, 2.0, 2.0];
        let out = rom_posthoc(&ranks, 10, 0, 0.05).unwrap();
        for c in out {
            assert_eq!(c.z, 0.0);
            assert_eq!(c.p, 0.5);
            assert!(!c.significant);
        }
    }

    #[test]
    fn likelihood_table_round_trips_csv() {
        let mut table = LikelihoodTable::new();
        table.insert("emotions", "fastgreedy-weighted", Metric::F1Micro, 0.673913);
        table.insert("scene", "br", Metric::HammingLoss, 0.369565);
        let parsed = LikelihoodTable::from_csv(&table.to_csv()).unwrap();
        assert_eq!(parsed, table);
    }

    #[test]
    fn aggregate_table_round_trips_csv() {
        let mut table = AggregateTable::new();
        table.insert(
            "br",
            Metric::F1Micro,
            Aggregate {
                min: 0.5,
                median: 0.885556,
                mean: 0.840028,
                std: 0.15253,
            },
        );
        let parsed = AggregateTable::from_csv(&table.to_csv()).unwrap();
        assert_eq!(parsed, table);
    }
}
