//! Label co-occurrence graphs.
//!
//! Vertices are label indices; an edge joins two labels iff some training
//! instance carries both. In weighted mode the edge weight is the number of
//! such instances. Labels never co-assigned with another stay in the graph as
//! isolated vertices so that every label ends up in some community.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::dataset::LabelMatrix;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("label matrix has zero label columns")]
    NoLabels,
    #[error("invalid edge ({a}, {b}): {message}")]
    InvalidEdge {
        a: usize,
        b: usize,
        message: String,
    },
}

/// An undirected weighted graph over `0..vertex_count`, no self-loops, each
/// unordered pair stored once with endpoints ordered `a < b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
    weighted: bool,
}

impl LabelGraph {
    /// Builds a graph from explicit edges with positive weights.
    pub fn from_weighted_edges(
        vertex_count: usize,
        edges: &[(usize, usize, f64)],
        weighted: bool,
    ) -> Result<Self, GraphError> {
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for &(a, b, w) in edges {
            let bad = |message: &str| GraphError::InvalidEdge {
                a,
                b,
                message: message.into(),
            };
            if a == b {
                return Err(bad("self-loop"));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(bad("endpoint out of range"));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(bad("weight must be positive and finite"));
            }
            let key = (a.min(b), a.max(b));
            if map.insert(key, w).is_some() {
                return Err(bad("duplicate edge"));
            }
        }
        let edges: Vec<(usize, usize, f64)> = map.into_iter().map(|((a, b), w)| (a, b, w)).collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b, w) in &edges {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        Ok(Self {
            vertex_count,
            edges,
            adjacency,
            weighted,
        })
    }

    /// Convenience constructor for unit-weight edges.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let weighted: Vec<(usize, usize, f64)> =
            edges.iter().map(|&(a, b)| (a, b, 1.0)).collect();
        Self::from_weighted_edges(vertex_count, &weighted, false)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Edges as `(a, b, weight)` with `a < b`, ascending.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// Number of incident edges.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Sum of incident edge weights (equals `degree` in unweighted mode).
    pub fn strength(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum()
    }

    /// Total edge weight of the graph.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }

    pub fn weight_between(&self, a: usize, b: usize) -> Option<f64> {
        self.adjacency[a]
            .iter()
            .find(|&&(n, _)| n == b)
            .map(|&(_, w)| w)
    }

    /// Plain-text edge list, one `i j weight` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b, w) in &self.edges {
            let _ = writeln!(out, "{a} {b} {w}");
        }
        out
    }
}

/// Builds the label co-occurrence graph of a training label matrix.
///
/// Edge `{i, j}` is present iff some row assigns both labels; in weighted
/// mode the weight is the count of such rows, otherwise 1.
pub fn build_cooccurrence_graph(
    labels: &LabelMatrix,
    weighted: bool,
) -> Result<LabelGraph, GraphError> {
    if labels.num_cols() == 0 {
        return Err(GraphError::NoLabels);
    }
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for row in labels.rows() {
        let active: Vec<usize> = row
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(j, _)| j)
            .collect();
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                *counts.entry((active[i], active[j])).or_insert(0) += 1;
            }
        }
    }
    let edges: Vec<(usize, usize, f64)> = counts
        .into_iter()
        .map(|((a, b), c)| (a, b, if weighted { c as f64 } else { 1.0 }))
        .collect();
    LabelGraph::from_weighted_edges(labels.num_cols(), &edges, weighted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[u8]]) -> LabelMatrix {
        LabelMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn counts_cooccurrences() {
        // Rows {A,B}, {B,C}, {A,B} over L = {A,B,C}.
        let labels = matrix(&[&[1, 1, 0], &[0, 1, 1], &[1, 1, 0]]);
        let g = build_cooccurrence_graph(&labels, true).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 2.0), (1, 2, 1.0)]);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.strength(1), 3.0);
    }

    #[test]
    fn no_coassignments_means_no_edges() {
        let labels = matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let g = build_cooccurrence_graph(&labels, true).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 3);
    }

    #[test]
    fn unweighted_mode_sets_unit_weights() {
        let labels = matrix(&[&[1, 1, 0], &[0, 1, 1], &[1, 1, 0]]);
        let w = build_cooccurrence_graph(&labels, true).unwrap();
        let u = build_cooccurrence_graph(&labels, false).unwrap();
        let w_pairs: Vec<(usize, usize)> = w.edges().iter().map(|&(a, b, _)| (a, b)).collect();
        let u_pairs: Vec<(usize, usize)> = u.edges().iter().map(|&(a, b, _)| (a, b)).collect();
        assert_eq!(w_pairs, u_pairs);
        assert!(u.edges().iter().all(|&(_, _, w)| w == 1.0));
    }

    #[test]
    fn zero_label_columns_is_an_error() {
        let labels = LabelMatrix::zeros(3, 0);
        assert!(matches!(
            build_cooccurrence_graph(&labels, true),
            Err(GraphError::NoLabels)
        ));
    }

    #[test]
    fn row_permutation_leaves_graph_unchanged() {
        let a = matrix(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let b = matrix(&[&[1, 0, 1], &[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(
            build_cooccurrence_graph(&a, true).unwrap(),
            build_cooccurrence_graph(&b, true).unwrap()
        );
    }

    #[test]
    fn total_weight_matches_brute_force_incidences() {
        let labels = matrix(&[&[1, 1, 1], &[1, 1, 0], &[0, 1, 1], &[1, 0, 0]]);
        let g = build_cooccurrence_graph(&labels, true).unwrap();
        let mut brute = 0u64;
        for r in 0..labels.num_rows() {
            for i in 0..labels.num_cols() {
                for j in i + 1..labels.num_cols() {
                    if labels.get(r, i) == 1 && labels.get(r, j) == 1 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(g.total_weight(), brute as f64);
    }

    #[test]
    fn rejects_self_loops_and_bad_weights() {
        assert!(LabelGraph::from_weighted_edges(3, &[(1, 1, 1.0)], true).is_err());
        assert!(LabelGraph::from_weighted_edges(3, &[(0, 1, 0.0)], true).is_err());
        assert!(LabelGraph::from_weighted_edges(3, &[(0, 1, 1.0), (1, 0, 2.0)], true).is_err());
        assert!(LabelGraph::from_weighted_edges(2, &[(0, 5, 1.0)], true).is_err());
    }

    #[test]
    fn edge_list_export() {
        let g = LabelGraph::from_weighted_edges(3, &[(0, 1, 2.0), (1, 2, 1.0)], true).unwrap();
        assert_eq!(g.to_edge_list(), "0 1 2\n1 2 1\n");
    }
}
