//! Markdown report, histogram CSV, and statistical test results.
//!
//! The omnibus Friedman/Iman-Davenport test runs per metric over the method
//! score matrix (datasets x methods, with the averaged-random baseline as the
//! control column), followed by Rom's one-sided step-up post-hoc against the
//! baseline. Likelihood histograms use 20 bins over [0,1]. The closing
//! recommendations table answers, per metric, whether data-driven
//! partitioning beats randomness and which method to pick.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::metrics::Metric;
use crate::stats::{iman_davenport, rom_posthoc, Direction, ImanDavenport, LikelihoodTable};

use super::analyze::{ScoreTable, RANDOM_BASELINE};
use super::config::MethodSpec;
use super::ExperimentError;

pub struct ReportOutput {
    pub markdown: String,
    pub histograms_csv: String,
    pub omnibus_csv: String,
    pub posthoc_csv: String,
}

struct MetricTests {
    metric: Metric,
    methods: Vec<String>,
    mean_ranks: Vec<f64>,
    omnibus: ImanDavenport,
    posthoc: Vec<PosthocRow>,
}

struct PosthocRow {
    method: String,
    mean_rank: f64,
    z: f64,
    p: f64,
    threshold: f64,
    significant: bool,
}

pub fn cmd_report(
    likelihoods: &LikelihoodTable,
    method_scores: &ScoreTable,
    alpha: f64,
) -> Result<ReportOutput, ExperimentError> {
    if !(0.0..1.0).contains(&alpha) || alpha <= 0.0 {
        return Err(ExperimentError::Config(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let datasets = method_scores.datasets();
    let methods: Vec<String> = method_scores.methods();
    let metrics: Vec<Metric> = Metric::ALL
        .into_iter()
        .filter(|&m| {
            datasets
                .iter()
                .any(|d| methods.iter().any(|mm| method_scores.get(d, mm, m).is_some()))
        })
        .collect();

    let tests = if datasets.len() >= 2 && methods.iter().any(|m| m == RANDOM_BASELINE) {
        run_tests(method_scores, &datasets, &methods, &metrics, alpha)?
    } else {
        Vec::new()
    };

    let histograms_csv = histograms_csv(likelihoods);
    let omnibus_csv = omnibus_csv(&tests);
    let posthoc_csv = posthoc_csv(&tests);
    let markdown = render_markdown(likelihoods, &datasets, &metrics, &tests, alpha)?;

    Ok(ReportOutput {
        markdown,
        histograms_csv,
        omnibus_csv,
        posthoc_csv,
    })
}

fn run_tests(
    scores: &ScoreTable,
    datasets: &[String],
    methods: &[String],
    metrics: &[Metric],
    alpha: f64,
) -> Result<Vec<MetricTests>, ExperimentError> {
    let mut all = Vec::new();
    for &metric in metrics {
        // Keep only methods scored on every dataset for this metric.
        let usable: Vec<String> = methods
            .iter()
            .filter(|m| datasets.iter().all(|d| scores.get(d, m, metric).is_some()))
            .cloned()
            .collect();
        if usable.len() < 2 || !usable.iter().any(|m| m == RANDOM_BASELINE) {
            continue;
        }
        let matrix: Vec<Vec<f64>> = datasets
            .iter()
            .map(|d| {
                usable
                    .iter()
                    .map(|m| scores.get(d, m, metric).unwrap())
                    .collect()
            })
            .collect();
        let rank_matrix = crate::stats::RankMatrix::new(matrix, Direction::for_metric(metric))
            .map_err(|e| ExperimentError::Internal(e.to_string()))?;
        let omnibus = iman_davenport(&rank_matrix.mean_ranks, datasets.len())
            .map_err(|e| ExperimentError::Internal(e.to_string()))?;
        let control = usable.iter().position(|m| m == RANDOM_BASELINE).unwrap();
        let comparisons = rom_posthoc(&rank_matrix.mean_ranks, datasets.len(), control, alpha)
            .map_err(|e| ExperimentError::Internal(e.to_string()))?;
        let posthoc = comparisons
            .into_iter()
            .map(|c| PosthocRow {
                method: usable[c.method_index].clone(),
                mean_rank: rank_matrix.mean_ranks[c.method_index],
                z: c.z,
                p: c.p,
                threshold: c.threshold,
                significant: c.significant,
            })
            .collect();
        all.push(MetricTests {
            metric,
            methods: usable,
            mean_ranks: rank_matrix.mean_ranks,
            omnibus,
            posthoc,
        });
    }
    Ok(all)
}

/// 20 equal bins over [0,1]; the top bin is closed so 1.0 lands in bin 19.
fn histograms_csv(likelihoods: &LikelihoodTable) -> String {
    let mut counts: BTreeMap<(String, Metric), [u64; 20]> = BTreeMap::new();
    for ((_, method, metric), &value) in likelihoods.iter() {
        let bin = ((value * 20.0).floor() as usize).min(19);
        counts.entry((method.clone(), *metric)).or_insert([0; 20])[bin] += 1;
    }
    let mut out = String::from("method,metric,bin_low,bin_high,count\n");
    for ((method, metric), bins) in &counts {
        for (i, &count) in bins.iter().enumerate() {
            let _ = writeln!(
                out,
                "{method},{},{:.2},{:.2},{count}",
                metric.id(),
                i as f64 / 20.0,
                (i + 1) as f64 / 20.0
            );
        }
    }
    out
}

fn omnibus_csv(tests: &[MetricTests]) -> String {
    let mut out = String::from("metric,chi2,f,df1,df2,p,degenerate\n");
    for t in tests {
        let f_text = if t.omnibus.degenerate {
            "inf".to_string()
        } else {
            format!("{:.6}", t.omnibus.f_stat)
        };
        let _ = writeln!(
            out,
            "{},{:.6},{f_text},{},{},{:.10},{}",
            t.metric.id(),
            t.omnibus.chi2,
            t.omnibus.df1,
            t.omnibus.df2,
            t.omnibus.p,
            t.omnibus.degenerate
        );
    }
    out
}

fn posthoc_csv(tests: &[MetricTests]) -> String {
    let mut out = String::from("metric,method,mean_rank,z,p,threshold,significant\n");
    for t in tests {
        for row in &t.posthoc {
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{:.10},{:.10},{}",
                t.metric.id(),
                row.method,
                row.mean_rank,
                row.z,
                row.p,
                row.threshold,
                row.significant
            );
        }
    }
    out
}

/// Per-method likelihood summaries for one metric: (mean, min), computable
/// from a single dataset upward.
fn likelihood_summaries(
    likelihoods: &LikelihoodTable,
    metric: Metric,
) -> BTreeMap<String, (f64, f64)> {
    let mut out = BTreeMap::new();
    for method in likelihoods.methods() {
        let values = likelihoods.values_for(&method, metric);
        if values.is_empty() {
            continue;
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let min = values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        out.insert(method, (mean, min));
    }
    out
}

fn render_markdown(
    likelihoods: &LikelihoodTable,
    datasets: &[String],
    metrics: &[Metric],
    tests: &[MetricTests],
    alpha: f64,
) -> Result<String, ExperimentError> {
    let mut md = String::new();
    let _ = writeln!(md, "# Label space partitioning report\n");
    let _ = writeln!(
        md,
        "Datasets analyzed: {}. Familywise significance level: {alpha}.\n",
        datasets.len()
    );

    let _ = writeln!(md, "## Omnibus tests (Friedman + Iman-Davenport)\n");
    if tests.is_empty() {
        let _ = writeln!(
            md,
            "_Statistical tests skipped: they need at least two datasets and a random baseline column._\n"
        );
    } else {
        let _ = writeln!(md, "| metric | chi2 | F | df | p | significant |");
        let _ = writeln!(md, "|---|---|---|---|---|---|");
        for t in tests {
            let f_text = if t.omnibus.degenerate {
                "degenerate".to_string()
            } else {
                format!("{:.4}", t.omnibus.f_stat)
            };
            let _ = writeln!(
                md,
                "| {} | {:.4} | {f_text} | ({}, {}) | {:.7} | {} |",
                t.metric.id(),
                t.omnibus.chi2,
                t.omnibus.df1,
                t.omnibus.df2,
                t.omnibus.p,
                if t.omnibus.p < alpha { "yes" } else { "no" }
            );
        }
        let _ = writeln!(md);

        let _ = writeln!(md, "## Post-hoc: Rom step-up vs averaged random baseline\n");
        for t in tests {
            let control_rank = t
                .methods
                .iter()
                .position(|m| m == RANDOM_BASELINE)
                .map(|i| t.mean_ranks[i])
                .unwrap_or(f64::NAN);
            let _ = writeln!(
                md,
                "### {} (baseline mean rank {:.4})\n",
                t.metric.id(),
                control_rank
            );
            let _ = writeln!(md, "| method | mean rank | z | p (one-sided) | threshold | better than random |");
            let _ = writeln!(md, "|---|---|---|---|---|---|");
            for row in &t.posthoc {
                let _ = writeln!(
                    md,
                    "| {} | {:.4} | {:.4} | {:.7} | {:.7} | {} |",
                    row.method,
                    row.mean_rank,
                    row.z,
                    row.p,
                    row.threshold,
                    if row.significant { "yes" } else { "no" }
                );
            }
            let _ = writeln!(md);
        }
    }

    let _ = writeln!(md, "## Likelihood of beating random, per method\n");
    for &metric in metrics {
        let summaries = likelihood_summaries(likelihoods, metric);
        if summaries.is_empty() {
            continue;
        }
        let _ = writeln!(md, "### {}\n", metric.id());
        let _ = writeln!(md, "| method | mean | min |");
        let _ = writeln!(md, "|---|---|---|");
        for (method, (mean, min)) in &summaries {
            let _ = writeln!(md, "| {method} | {mean:.6} | {min:.6} |");
        }
        let _ = writeln!(md);
    }
    let _ = writeln!(
        md,
        "Histogram bin counts (20 bins over [0,1]) are written to `histograms.csv`.\n"
    );

    let _ = writeln!(md, "## Recommendations\n");
    let _ = writeln!(
        md,
        "| question | {} |",
        metrics.iter().map(|m| m.id()).collect::<Vec<_>>().join(" | ")
    );
    let _ = writeln!(md, "|---|{}|", vec!["---"; metrics.len()].join("|"));

    let is_data_driven =
        |id: &str| MethodSpec::parse(id).is_some_and(|m| m.is_data_driven());
    let is_apriori = |id: &str| MethodSpec::parse(id).is_some_and(|m| m.is_apriori());

    let mut rh1 = Vec::new();
    let mut rh2 = Vec::new();
    let mut rh3 = Vec::new();
    let mut rh4 = Vec::new();
    let mut recommended = Vec::new();
    for &metric in metrics {
        let summaries = likelihood_summaries(likelihoods, metric);
        let best = |pred: &dyn Fn(&str) -> bool, pick_min: bool| -> Option<(String, f64)> {
            summaries
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, &(mean, min))| (m.clone(), if pick_min { min } else { mean }))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(b.0.cmp(&a.0)))
        };
        let dd_mean = best(&is_data_driven, false);
        let dd_min = best(&is_data_driven, true);
        let ap_mean = best(&is_apriori, false);
        let ap_min = best(&is_apriori, true);

        rh1.push(match tests.iter().find(|t| t.metric == metric) {
            Some(t) => {
                let any = t
                    .posthoc
                    .iter()
                    .any(|row| row.significant && is_data_driven(&row.method));
                if any { "yes" } else { "no" }
            }
            None => "n/a",
        });
        rh2.push(match (&dd_mean, &ap_mean) {
            (Some(dd), Some(ap)) => {
                if dd.1 > ap.1 {
                    "yes"
                } else {
                    "no"
                }
            }
            _ => "n/a",
        });
        rh3.push(match (&dd_min, &ap_min) {
            (Some(dd), Some(ap)) => {
                if dd.1 > ap.1 {
                    "yes"
                } else {
                    "no"
                }
            }
            _ => "n/a",
        });
        rh4.push(match &dd_min {
            Some(dd) => {
                if dd.1 > 0.5 {
                    "yes"
                } else {
                    "no"
                }
            }
            None => "n/a",
        });
        recommended.push(dd_mean.map(|(m, _)| m).unwrap_or_else(|| "n/a".into()));
    }
    let rows: [(&str, Vec<&str>); 4] = [
        (
            "Best data-driven method significantly beats the averaged random baseline",
            rh1,
        ),
        (
            "Data-driven methods are more likely than a priori transforms to beat random partitions (mean likelihood)",
            rh2,
        ),
        (
            "Data-driven methods keep that advantage in the worst case (min likelihood)",
            rh3,
        ),
        (
            "Best data-driven worst-case likelihood exceeds 0.5",
            rh4,
        ),
    ];
    for (question, cells) in rows {
        let _ = writeln!(md, "| {question} | {} |", cells.join(" | "));
    }
    let _ = writeln!(
        md,
        "| Recommended data-driven method (highest mean likelihood) | {} |",
        recommended.join(" | ")
    );
    Ok(md)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn likelihood_fixture() -> LikelihoodTable {
        let mut t = LikelihoodTable::new();
        for (dataset, br, fg) in [("a", 0.4, 0.9), ("b", 0.5, 0.8)] {
            t.insert(dataset, "BR", Metric::F1Micro, br);
            t.insert(dataset, "fastgreedy-weighted", Metric::F1Micro, fg);
        }
        t
    }

    fn score_fixture() -> ScoreTable {
        let mut t = ScoreTable::default();
        for (dataset, br, fg, random) in [("a", 0.6, 0.9, 0.5), ("b", 0.55, 0.85, 0.5)] {
            t.insert(dataset, "BR", Metric::F1Micro, br);
            t.insert(dataset, "fastgreedy-weighted", Metric::F1Micro, fg);
            t.insert(dataset, RANDOM_BASELINE, Metric::F1Micro, random);
        }
        t
    }

    #[test]
    fn report_is_deterministic() {
        let likelihoods = likelihood_fixture();
        let scores = score_fixture();
        let a = cmd_report(&likelihoods, &scores, 0.05).unwrap();
        let b = cmd_report(&likelihoods, &scores, 0.05).unwrap();
        assert_eq!(a.markdown, b.markdown);
        assert_eq!(a.histograms_csv, b.histograms_csv);
        assert_eq!(a.omnibus_csv, b.omnibus_csv);
        assert_eq!(a.posthoc_csv, b.posthoc_csv);
    }

    #[test]
    fn single_dataset_skips_tests_with_notice() {
        let mut likelihoods = LikelihoodTable::new();
        likelihoods.insert("only", "BR", Metric::F1Micro, 0.7);
        let mut scores = ScoreTable::default();
        scores.insert("only", "BR", Metric::F1Micro, 0.6);
        scores.insert("only", RANDOM_BASELINE, Metric::F1Micro, 0.5);
        let out = cmd_report(&likelihoods, &scores, 0.05).unwrap();
        assert!(out.markdown.contains("Statistical tests skipped"));
        assert_eq!(out.omnibus_csv.lines().count(), 1, "header only");
    }

    #[test]
    fn degenerate_ranking_is_flagged() {
        // fastgreedy-weighted > BR > random on every dataset: perfect
        // separation degenerates the F statistic.
        let likelihoods = likelihood_fixture();
        let scores = score_fixture();
        let out = cmd_report(&likelihoods, &scores, 0.05).unwrap();
        assert!(out.markdown.contains("degenerate"));
        assert!(out.omnibus_csv.contains("true"));
    }

    #[test]
    fn histogram_bins_count_values() {
        let likelihoods = likelihood_fixture();
        let scores = score_fixture();
        let out = cmd_report(&likelihoods, &scores, 0.05).unwrap();
        // 0.9 and 0.8 both fall in fastgreedy-weighted's bins 16 and 18.
        assert!(out
            .histograms_csv
            .contains("fastgreedy-weighted,f1-micro,0.80,0.85,1"));
        assert!(out
            .histograms_csv
            .contains("fastgreedy-weighted,f1-micro,0.90,0.95,1"));
    }

    #[test]
    fn all_tied_scores_give_p_one() {
        let mut scores = ScoreTable::default();
        for dataset in ["a", "b", "c"] {
            scores.insert(dataset, "BR", Metric::F1Micro, 0.5);
            scores.insert(dataset, "LP", Metric::F1Micro, 0.5);
            scores.insert(dataset, RANDOM_BASELINE, Metric::F1Micro, 0.5);
        }
        let out = cmd_report(&LikelihoodTable::new(), &scores, 0.05).unwrap();
        assert!(out.omnibus_csv.contains("f1-micro,0.000000"));
        assert!(out.omnibus_csv.contains(",1.0000000000,"));
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(cmd_report(&LikelihoodTable::new(), &ScoreTable::default(), 0.0).is_err());
        assert!(cmd_report(&LikelihoodTable::new(), &ScoreTable::default(), 1.5).is_err());
    }
}
