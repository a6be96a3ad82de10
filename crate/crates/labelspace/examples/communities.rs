//! Run the five community detectors on one graph and score their partitions
//! with both quality functions.
//!
//! ```bash
//! cargo run -p labelspace --example communities
//! ```

use labelspace::community::{
    detect, map_equation, modularity, Algorithm, CommunityPartition, DetectorConfig,
};
use labelspace::graph::LabelGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two 5-cliques joined by a single bridge: a classic planted partition.
    let mut edges = Vec::new();
    for offset in [0usize, 5] {
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((offset + a, offset + b));
            }
        }
    }
    edges.push((0, 5));
    let graph = LabelGraph::from_edges(10, &edges)?;
    println!(
        "graph: {} vertices, {} edges",
        graph.vertex_count(),
        graph.edge_count()
    );

    for algorithm in Algorithm::ALL {
        let config = DetectorConfig::new(algorithm).with_seed(7);
        let partition = detect(&graph, &config)?;
        let q = modularity(&graph, &partition)?;
        let bits = map_equation(&graph, &partition)?;
        println!(
            "\n{}: {} blocks, Q = {q:.4}, codelength = {bits:.4} bits",
            algorithm.id(),
            partition.num_blocks()
        );
        print!("{}", partition.to_text());
    }

    // Reference points for the quality functions.
    let single = CommunityPartition::new(vec![(0..10).collect()], 10)?;
    let singletons = CommunityPartition::singletons(10);
    println!("\nsingle block:   Q = {:.4}", modularity(&graph, &single)?);
    println!("all singletons: Q = {:.4}", modularity(&graph, &singletons)?);
    println!(
        "single block codelength = {:.4} bits (entropy of the stationary walk)",
        map_equation(&graph, &single)?
    );
    Ok(())
}
