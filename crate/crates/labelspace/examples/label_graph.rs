//! Build label co-occurrence graphs from a training label matrix.
//!
//! ```bash
//! cargo run -p labelspace --example label_graph
//! ```

use labelspace::dataset::LabelMatrix;
use labelspace::graph::build_cooccurrence_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Five labels; label 4 is never co-assigned and stays isolated.
    let rows = vec![
        vec![1, 1, 0, 0, 0],
        vec![1, 1, 1, 0, 0],
        vec![0, 1, 1, 0, 0],
        vec![0, 0, 1, 1, 0],
        vec![1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1],
    ];
    let labels = LabelMatrix::from_rows(&rows)?;

    let weighted = build_cooccurrence_graph(&labels, true)?;
    println!(
        "weighted graph: {} vertices, {} edges, total weight {}",
        weighted.vertex_count(),
        weighted.edge_count(),
        weighted.total_weight()
    );
    println!("edge list (i j weight):\n{}", weighted.to_edge_list());

    for v in 0..weighted.vertex_count() {
        println!(
            "label {v}: degree {}, strength {}",
            weighted.degree(v),
            weighted.strength(v)
        );
    }

    let unweighted = build_cooccurrence_graph(&labels, false)?;
    println!(
        "\nunweighted mode keeps the same edge set with unit weights: total weight {}",
        unweighted.total_weight()
    );
    Ok(())
}
