//! Train the CART base classifier and inspect its splits.
//!
//! ```bash
//! cargo run -p labelspace --example decision_tree
//! ```

use labelspace::cart::{best_split, gini_impurity, train, CartParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("Gini impurity of [5,0]: {}", gini_impurity(&[5, 0])?);
    println!("Gini impurity of [1,1]: {}", gini_impurity(&[1, 1])?);
    println!("Gini impurity of [2,1]: {:.6}", gini_impurity(&[2, 1])?);

    // Two informative features, three classes.
    let features = vec![
        vec![0.2, 4.1],
        vec![0.5, 3.8],
        vec![0.9, 4.4],
        vec![2.6, 4.0],
        vec![3.1, 3.6],
        vec![2.8, 0.4],
        vec![3.3, 0.9],
        vec![2.5, 0.2],
    ];
    let classes = vec![0, 0, 0, 1, 1, 2, 2, 2];

    let rows: Vec<usize> = (0..features.len()).collect();
    if let Some(split) = best_split(&features, &classes, &rows) {
        println!(
            "\nroot split: feature {} at {:.3} (impurity decrease {:.4})",
            split.feature, split.threshold, split.impurity_decrease
        );
    }

    let tree = train(&features, &classes, &CartParams::default())?;
    println!("\ntree (depth {}, {} leaves):", tree.depth(), tree.num_leaves());
    print!("{}", tree.dump());

    let training_accuracy = features
        .iter()
        .zip(&classes)
        .filter(|(x, &c)| tree.predict(x).unwrap() == c)
        .count() as f64
        / classes.len() as f64;
    println!("training accuracy: {training_accuracy}");

    // A depth limit trades accuracy for a smaller tree.
    let stump = train(
        &features,
        &classes,
        &CartParams {
            max_depth: Some(1),
            ..CartParams::default()
        },
    )?;
    let stump_accuracy = features
        .iter()
        .zip(&classes)
        .filter(|(x, &c)| stump.predict(x).unwrap() == c)
        .count() as f64
        / classes.len() as f64;
    println!(
        "depth-1 stump: depth {}, training accuracy {}",
        stump.depth(),
        stump_accuracy
    );
    println!("\nprediction for [0.4, 4.0]: class {}", tree.predict(&[0.4, 4.0])?);
    println!("prediction for [3.0, 0.5]: class {}", tree.predict(&[3.0, 0.5])?);
    Ok(())
}
