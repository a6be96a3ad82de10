//! The statistical comparison harness on its own: likelihoods of beating
//! random, cross-dataset aggregates, the Friedman/Iman-Davenport omnibus
//! test, and Rom's step-up post-hoc procedure.
//!
//! ```bash
//! cargo run -p labelspace --example compare_methods
//! ```

use labelspace::stats::{
    aggregate_likelihoods, iman_davenport, likelihood_better, rom_posthoc, rom_thresholds,
    Direction, RankMatrix,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Likelihood of beating random: the fraction of random-partition scores
    // a method strictly exceeds.
    let random_scores = [0.52, 0.55, 0.58, 0.61, 0.64, 0.70];
    for method_score in [0.50, 0.60, 0.72] {
        let likelihood =
            likelihood_better(method_score, &random_scores, Direction::HigherIsBetter)?;
        println!("score {method_score:.2} beats {likelihood:.3} of the random pool");
    }

    // Aggregating per-dataset likelihoods.
    let per_dataset = [0.96, 0.88, 0.91, 0.55, 0.97, 0.83];
    let aggregate = aggregate_likelihoods(&per_dataset)?;
    println!(
        "\naggregate over datasets: min {:.3}, median {:.3}, mean {:.3}, std {:.3}",
        aggregate.min, aggregate.median, aggregate.mean, aggregate.std
    );

    // Rank-based comparison of four methods over six datasets (column 3 is
    // the averaged-random baseline).
    let methods = ["structured-a", "structured-b", "plain", "random"];
    let scores = vec![
        vec![0.81, 0.78, 0.70, 0.65],
        vec![0.74, 0.75, 0.68, 0.66],
        vec![0.88, 0.80, 0.74, 0.71],
        vec![0.69, 0.72, 0.60, 0.60],
        vec![0.77, 0.74, 0.69, 0.64],
        vec![0.83, 0.79, 0.66, 0.68],
    ];
    let matrix = RankMatrix::new(scores, Direction::HigherIsBetter)?;
    println!("\nmean ranks (1 = best):");
    for (method, rank) in methods.iter().zip(&matrix.mean_ranks) {
        println!("  {method:<14} {rank:.3}");
    }

    let omnibus = iman_davenport(&matrix.mean_ranks, 6)?;
    println!(
        "omnibus: chi2 = {:.4}, F = {:.4} on ({}, {}) df, p = {:.5}",
        omnibus.chi2, omnibus.f_stat, omnibus.df1, omnibus.df2, omnibus.p
    );

    let alpha = 0.05;
    println!("\nRom step-up thresholds for 3 comparisons: {:?}", rom_thresholds(3, alpha));
    let comparisons = rom_posthoc(&matrix.mean_ranks, 6, 3, alpha)?;
    println!("post-hoc vs the random baseline (one-sided):");
    for comparison in comparisons {
        println!(
            "  {:<14} z = {:+.3}, p = {:.4}, threshold = {:.4} -> {}",
            methods[comparison.method_index],
            comparison.z,
            comparison.p,
            comparison.threshold,
            if comparison.significant {
                "better than random"
            } else {
                "not significant"
            }
        );
    }
    Ok(())
}
