//! Internal detector view of a graph: only vertices with at least one edge,
//! reindexed densely, with weights read as stored or flattened to 1.

use crate::graph::LabelGraph;

pub(crate) struct GraphView {
    original: Vec<usize>,
    adjacency: Vec<Vec<(usize, f64)>>,
    strength: Vec<f64>,
    total_weight: f64,
}

impl GraphView {
    pub fn new(graph: &LabelGraph, use_weights: bool) -> Self {
        let original: Vec<usize> = (0..graph.vertex_count())
            .filter(|&v| graph.degree(v) > 0)
            .collect();
        let mut dense = vec![usize::MAX; graph.vertex_count()];
        for (i, &v) in original.iter().enumerate() {
            dense[v] = i;
        }
        let mut adjacency = vec![Vec::new(); original.len()];
        let mut total_weight = 0.0;
        for &(a, b, w) in graph.edges() {
            let w = if use_weights { w } else { 1.0 };
            adjacency[dense[a]].push((dense[b], w));
            adjacency[dense[b]].push((dense[a], w));
            total_weight += w;
        }
        let strength: Vec<f64> = adjacency
            .iter()
            .map(|nbrs| nbrs.iter().map(|&(_, w)| w).sum())
            .collect();
        Self {
            original,
            adjacency,
            strength,
            total_weight,
        }
    }

    /// Number of active vertices.
    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn original_id(&self, v: usize) -> usize {
        self.original[v]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn strength(&self, v: usize) -> f64 {
        self.strength[v]
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }
}
