//! The whole experiment pipeline at desk scale: generate two small datasets,
//! run every method (exhaustive RAkELd included), analyze, and report —
//! exactly what the `labelspace` binary does with `run`/`analyze`/`report`.
//!
//! ```bash
//! cargo run -p labelspace --example full_pipeline
//! ```

use labelspace::dataset::{to_dense_arff, to_label_header_xml};
use labelspace::experiment::{
    analyze_files, report_files, run_to_files, DatasetEntry, ExperimentConfig, MethodSpec,
};
use labelspace::metrics::Metric;
use labelspace::synthetic::{generate, SyntheticConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let data_dir = dir.path().join("data");
    let out_dir = dir.path().join("out");
    std::fs::create_dir_all(&data_dir)?;

    // Two synthetic 6-label datasets so the rank tests have something to rank.
    let mut entries = Vec::new();
    for (name, seed) in [("coastal", 42u64), ("inland", 43u64)] {
        let pair = generate(&SyntheticConfig {
            seed,
            ..SyntheticConfig::default()
        });
        let train = data_dir.join(format!("{name}-train.arff"));
        let test = data_dir.join(format!("{name}-test.arff"));
        let labels = data_dir.join(format!("{name}.xml"));
        std::fs::write(&train, to_dense_arff(&pair.train, name))?;
        std::fs::write(&test, to_dense_arff(&pair.test, name))?;
        std::fs::write(&labels, to_label_header_xml(&pair.train.label_names))?;
        entries.push(DatasetEntry {
            name: name.into(),
            train,
            test,
            labels,
        });
    }

    let config = ExperimentConfig {
        datasets: entries,
        methods: MethodSpec::all().iter().map(MethodSpec::id).collect(),
        // 30%..90% of six labels puts block sizes 2..5 on the grid; their
        // universes are small, so RAkELd runs exhaustively (46 partitions).
        k_percentages: vec![30, 40, 50, 60, 70, 80, 90],
        k_values: None,
        samples_per_k: 250,
        seed: 7,
        cart: Default::default(),
        metrics: Metric::ALL.iter().map(|m| m.id().to_string()).collect(),
        output_dir: out_dir.clone(),
    };
    println!("config:\n{}\n", serde_json::to_string_pretty(&config)?);

    let (scores_path, warnings) = run_to_files(&config)?;
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    let scores = std::fs::read_to_string(&scores_path)?;
    println!("run: wrote {} ({} records)", scores_path.display(), scores.lines().count() - 1);

    let (analysis, written) = analyze_files(&scores_path, &out_dir)?;
    for path in &written {
        println!("analyze: wrote {}", path.display());
    }
    println!(
        "analyze: {} datasets, {} methods scored",
        analysis.likelihoods.datasets().len(),
        analysis.likelihoods.methods().len()
    );

    let reports = report_files(
        &out_dir.join("likelihoods.csv"),
        &out_dir.join("method_scores.csv"),
        0.05,
        &out_dir,
    )?;
    for path in &reports {
        println!("report: wrote {}", path.display());
    }

    let report = std::fs::read_to_string(out_dir.join("report.md"))?;
    let excerpt: Vec<&str> = report.lines().take(14).collect();
    println!("\nreport excerpt:\n{}", excerpt.join("\n"));
    println!("...\n\n(run the `labelspace` binary with run/analyze/report for the same flow)");
    Ok(())
}
