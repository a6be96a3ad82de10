//! Count, enumerate, and sample random label-space partitions (the RAkELd
//! baseline machinery).
//!
//! ```bash
//! cargo run -p labelspace --example partitions
//! ```

use labelspace::transform::{count_partitions, enumerate_partitions, k_grid, sample_partitions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Partitions split n labels into floor(n/k) blocks of size k plus one
    // remainder block.
    println!("universe sizes for n = 6:");
    for k in 1..=6 {
        println!("  k = {k}: {} partitions", count_partitions(6, k)?);
    }
    println!("larger sets: (14,12) -> {}", count_partitions(14, 12)?);
    println!("             (22,21) -> {}", count_partitions(22, 21)?);

    println!("\nblock-size grid (10%..90% of n):");
    for n in [6, 14, 22, 101] {
        println!("  n = {n}: {:?}", k_grid(n));
    }

    println!("\nall partitions of 4 labels into pairs:");
    for partition in enumerate_partitions(4, 2, 1000)? {
        print!("{}", partition.to_text().replace('\n', "  "));
        println!();
    }

    // Sampling is uniform over the universe and deduplicates; when the
    // request covers the whole universe it simply returns everything.
    let sampled = sample_partitions(6, 2, 4, 42)?;
    println!("\n4 sampled partitions of (6,2), seed 42:");
    for partition in &sampled {
        println!("  {:?}", partition.blocks());
    }
    let exhaustive = sample_partitions(6, 2, 1000, 42)?;
    println!(
        "requesting 1000 from the 15-member universe returns all {}",
        exhaustive.len()
    );
    Ok(())
}
