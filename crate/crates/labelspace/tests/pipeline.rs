//! End-to-end pipeline coverage beyond the acceptance run: a two-dataset
//! experiment that exercises the full statistical path, failure tolerance,
//! and the command-line binary.

use std::path::Path;
use std::process::Command;

use labelspace::dataset::{to_dense_arff, to_label_header_xml};
use labelspace::experiment::{
    analyze_files, cmd_run, report_files, run_to_files, DatasetEntry, ExperimentConfig,
    MethodSpec,
};
use labelspace::metrics::Metric;
use labelspace::synthetic::{generate, SyntheticConfig};

fn write_dataset(dir: &Path, name: &str, seed: u64) -> DatasetEntry {
    let pair = generate(&SyntheticConfig {
        num_labels: 6,
        num_groups: 2,
        train_instances: 60,
        test_instances: 40,
        seed,
    });
    let train = dir.join(format!("{name}-train.arff"));
    let test = dir.join(format!("{name}-test.arff"));
    let labels = dir.join(format!("{name}.xml"));
    std::fs::write(&train, to_dense_arff(&pair.train, name)).unwrap();
    std::fs::write(&test, to_dense_arff(&pair.test, name)).unwrap();
    std::fs::write(&labels, to_label_header_xml(&pair.train.label_names)).unwrap();
    DatasetEntry {
        name: name.into(),
        train,
        test,
        labels,
    }
}

fn two_dataset_config(dir: &Path, output_dir: &Path) -> ExperimentConfig {
    ExperimentConfig {
        datasets: vec![
            write_dataset(dir, "alpha", 11),
            write_dataset(dir, "beta", 22),
        ],
        methods: MethodSpec::all().iter().map(MethodSpec::id).collect(),
        k_percentages: vec![30, 50],
        k_values: None,
        samples_per_k: 8,
        seed: 99,
        cart: Default::default(),
        metrics: Metric::ALL.iter().map(|m| m.id().to_string()).collect(),
        output_dir: output_dir.to_path_buf(),
    }
}

#[test]
fn two_dataset_pipeline_runs_the_statistical_tests() {
    let base = tempfile::tempdir().unwrap();
    let data_dir = base.path().join("data");
    std::fs::create_dir_all(&data_dir).unwrap();
    let out_dir = base.path().join("out");
    let config = two_dataset_config(&data_dir, &out_dir);

    let (scores_path, warnings) = run_to_files(&config).unwrap();
    assert!(warnings.is_empty(), "{warnings:?}");

    let (analysis, written) = analyze_files(&scores_path, &out_dir).unwrap();
    assert_eq!(analysis.likelihoods.datasets(), vec!["alpha", "beta"]);
    assert_eq!(analysis.likelihoods.methods().len(), 12);
    assert!(analysis.aggregates.is_some(), "two datasets give aggregates");
    assert_eq!(written.len(), 3);

    let report_paths = report_files(
        &out_dir.join("likelihoods.csv"),
        &out_dir.join("method_scores.csv"),
        0.05,
        &out_dir,
    )
    .unwrap();
    assert_eq!(report_paths.len(), 4);

    let omnibus = std::fs::read_to_string(out_dir.join("omnibus.csv")).unwrap();
    assert_eq!(omnibus.lines().count(), 6, "header plus one row per metric");
    let posthoc = std::fs::read_to_string(out_dir.join("posthoc.csv")).unwrap();
    // 12 methods compared against the baseline for each of 5 metrics.
    assert_eq!(posthoc.lines().count(), 1 + 12 * 5);
    let report = std::fs::read_to_string(out_dir.join("report.md")).unwrap();
    assert!(report.contains("## Omnibus tests"));
    assert!(report.contains("## Post-hoc"));
    assert!(!report.contains("Statistical tests skipped"));
}

#[test]
fn rerun_with_same_seed_reproduces_records() {
    let base = tempfile::tempdir().unwrap();
    let data_dir = base.path().join("data");
    std::fs::create_dir_all(&data_dir).unwrap();
    let config = two_dataset_config(&data_dir, &base.path().join("out"));
    let first = cmd_run(&config).unwrap();
    let second = cmd_run(&config).unwrap();
    assert_eq!(first.records, second.records);
}

#[test]
fn unreadable_dataset_is_skipped_with_warning() {
    let base = tempfile::tempdir().unwrap();
    let data_dir = base.path().join("data");
    std::fs::create_dir_all(&data_dir).unwrap();
    let good = write_dataset(&data_dir, "good", 5);
    let config = ExperimentConfig {
        datasets: vec![
            DatasetEntry {
                name: "missing".into(),
                train: data_dir.join("nope-train.arff"),
                test: data_dir.join("nope-test.arff"),
                labels: data_dir.join("nope.xml"),
            },
            good,
        ],
        methods: vec!["BR".into(), "rakeld".into()],
        k_percentages: vec![50],
        k_values: None,
        samples_per_k: 3,
        seed: 1,
        cart: Default::default(),
        metrics: vec!["f1-micro".into()],
        output_dir: base.path().join("out"),
    };
    let output = cmd_run(&config).unwrap();
    assert!(output.warnings.iter().any(|w| w.contains("missing")));
    assert!(output.records.iter().all(|r| r.dataset == "good"));
    assert!(!output.records.is_empty());
}

#[test]
fn br_only_config_emits_one_record_per_metric() {
    let base = tempfile::tempdir().unwrap();
    let data_dir = base.path().join("data");
    std::fs::create_dir_all(&data_dir).unwrap();
    let entry = write_dataset(&data_dir, "solo", 3);
    let config = ExperimentConfig {
        datasets: vec![entry],
        methods: vec!["BR".into()],
        k_percentages: vec![50],
        k_values: None,
        samples_per_k: 5,
        seed: 0,
        cart: Default::default(),
        metrics: Metric::ALL.iter().map(|m| m.id().to_string()).collect(),
        output_dir: base.path().join("out"),
    };
    let output = cmd_run(&config).unwrap();
    assert_eq!(output.records.len(), Metric::ALL.len());
}

#[test]
fn empty_dataset_list_yields_header_only_csv() {
    let base = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        datasets: vec![],
        methods: vec!["BR".into()],
        k_percentages: vec![50],
        k_values: None,
        samples_per_k: 5,
        seed: 0,
        cart: Default::default(),
        metrics: vec!["f1-micro".into()],
        output_dir: base.path().join("out"),
    };
    let (path, warnings) = run_to_files(&config).unwrap();
    assert!(warnings.is_empty());
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        "dataset,method,variant,k,sample_id,metric,value\n"
    );
}

#[test]
fn cli_round_trip() {
    let binary = env!("CARGO_BIN_EXE_labelspace");
    let base = tempfile::tempdir().unwrap();
    let data_dir = base.path().join("data");
    std::fs::create_dir_all(&data_dir).unwrap();
    let out_dir = base.path().join("out");
    let mut config = two_dataset_config(&data_dir, &out_dir);
    config.samples_per_k = 4;
    config.k_percentages = vec![50];
    let config_path = base.path().join("config.json");
    std::fs::write(&config_path, serde_json::to_string_pretty(&config).unwrap()).unwrap();

    let run = Command::new(binary)
        .args(["run", "--config", config_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(out_dir.join("scores.csv").exists());

    let analyze = Command::new(binary)
        .args([
            "analyze",
            "--scores",
            out_dir.join("scores.csv").to_str().unwrap(),
            "--output-dir",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(analyze.status.success());

    let report = Command::new(binary)
        .args([
            "report",
            "--likelihoods",
            out_dir.join("likelihoods.csv").to_str().unwrap(),
            "--method-scores",
            out_dir.join("method_scores.csv").to_str().unwrap(),
            "--output-dir",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(report.status.success());
    assert!(out_dir.join("report.md").exists());
}

#[test]
fn cli_exit_codes_distinguish_error_classes() {
    let binary = env!("CARGO_BIN_EXE_labelspace");
    let base = tempfile::tempdir().unwrap();

    // Config error -> exit 1.
    let bad_config = base.path().join("bad.json");
    std::fs::write(&bad_config, r#"{"datasets": [], "output_dir": "o", "samples_per_k": 0}"#)
        .unwrap();
    let run = Command::new(binary)
        .args(["run", "--config", bad_config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(run.status.code(), Some(1));

    // Data error (malformed scores CSV) -> exit 2.
    let bad_scores = base.path().join("scores.csv");
    std::fs::write(&bad_scores, "dataset,method,variant,k,sample_id,metric,value\nx,y\n").unwrap();
    let analyze = Command::new(binary)
        .args([
            "analyze",
            "--scores",
            bad_scores.to_str().unwrap(),
            "--output-dir",
            base.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(analyze.status.code(), Some(2));
}
