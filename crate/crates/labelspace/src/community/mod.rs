//! Community detection over label co-occurrence graphs.
//!
//! Five detectors produce disjoint vertex partitions: two modularity
//! maximizers (fast greedy agglomeration and recursive leading-eigenvector
//! bisection), random-walk agglomeration (walktrap), asynchronous label
//! propagation, and a map-equation minimizer (infomap). The two partition
//! quality functions — Newman modularity and the two-level map equation —
//! are exposed on their own so detector output can be scored or checked
//! against exhaustive search.
//!
//! All detectors are pure functions of `(graph, config)`. Vertices with no
//! incident edges always come back as singleton blocks.

mod fast_greedy;
mod infomap;
mod label_propagation;
mod leading_eigenvector;
mod view;
mod walktrap;

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::LabelGraph;
use view::GraphView;

#[derive(Debug, Error)]
pub enum CommunityError {
    #[error("partition is not a disjoint cover of 0..{expected}: {message}")]
    InvalidPartition { expected: usize, message: String },
    #[error("invalid detector configuration: {0}")]
    InvalidConfig(String),
    #[error("map equation is undefined on a graph with no edges")]
    EmptyGraph,
    #[error(
        "eigensolver did not converge within {iterations} iterations (residual {residual:.3e})"
    )]
    EigenNoConvergence { iterations: usize, residual: f64 },
    #[error("label propagation did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

/// A disjoint cover of the vertex set, held in canonical form: vertices
/// sorted inside each block, blocks sorted by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityPartition {
    blocks: Vec<Vec<usize>>,
    vertex_count: usize,
}

impl CommunityPartition {
    pub fn new(blocks: Vec<Vec<usize>>, vertex_count: usize) -> Result<Self, CommunityError> {
        let invalid = |message: String| CommunityError::InvalidPartition {
            expected: vertex_count,
            message,
        };
        let mut seen = vec![false; vertex_count];
        for block in &blocks {
            if block.is_empty() {
                return Err(invalid("empty block".into()));
            }
            for &v in block {
                if v >= vertex_count {
                    return Err(invalid(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(invalid(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(invalid(format!("vertex {missing} is not covered")));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self {
            blocks,
            vertex_count,
        })
    }

    /// Builds a partition from a per-vertex block assignment.
    pub fn from_assignments(assignments: &[usize]) -> Self {
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for (v, &c) in assignments.iter().enumerate() {
            groups.entry(c).or_default().push(v);
        }
        Self::new(groups.into_values().collect(), assignments.len())
            .expect("grouped assignments always form a disjoint cover")
    }

    pub fn singletons(vertex_count: usize) -> Self {
        Self {
            blocks: (0..vertex_count).map(|v| vec![v]).collect(),
            vertex_count,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Block index of each vertex.
    pub fn assignments(&self) -> Vec<usize> {
        let mut assign = vec![0; self.vertex_count];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                assign[v] = b;
            }
        }
        assign
    }

    /// Canonical text form, one `block_index: v1,v2,...` line per block.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, block) in self.blocks.iter().enumerate() {
            let members: Vec<String> = block.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{i}: {}", members.join(","));
        }
        out
    }
}

/// Detector selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    FastGreedy,
    LeadingEigenvector,
    LabelPropagation,
    Walktrap,
    Infomap,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::FastGreedy,
        Algorithm::LeadingEigenvector,
        Algorithm::LabelPropagation,
        Algorithm::Walktrap,
        Algorithm::Infomap,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::FastGreedy => "fastgreedy",
            Algorithm::LeadingEigenvector => "leading_eigenvector",
            Algorithm::LabelPropagation => "label_propagation",
            Algorithm::Walktrap => "walktrap",
            Algorithm::Infomap => "infomap",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Algorithm::ALL.into_iter().find(|a| a.id() == id)
    }
}

/// Detector parameters. Defaults follow common practice: four walk steps for
/// walktrap and ten infomap restarts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    pub algorithm: Algorithm,
    /// Read stored edge weights (`true`) or treat every edge as weight 1.
    pub use_weights: bool,
    pub rng_seed: u64,
    pub walktrap_steps: usize,
    pub infomap_trials: usize,
    pub eigen_tolerance: f64,
    pub eigen_max_iterations: usize,
    pub lpa_max_sweeps: usize,
}

impl DetectorConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            use_weights: true,
            rng_seed: 0,
            walktrap_steps: 4,
            infomap_trials: 10,
            eigen_tolerance: 1e-10,
            eigen_max_iterations: 10_000,
            lpa_max_sweeps: 1000,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn weighted(mut self, use_weights: bool) -> Self {
        self.use_weights = use_weights;
        self
    }

    fn validate(&self) -> Result<(), CommunityError> {
        if self.walktrap_steps == 0 {
            return Err(CommunityError::InvalidConfig(
                "walktrap_steps must be >= 1".into(),
            ));
        }
        if self.infomap_trials == 0 {
            return Err(CommunityError::InvalidConfig(
                "infomap_trials must be >= 1".into(),
            ));
        }
        if !self.eigen_tolerance.is_finite() || self.eigen_tolerance <= 0.0 {
            return Err(CommunityError::InvalidConfig(
                "eigen_tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Newman modularity of a partition:
/// `Q = sum_c [ W_in(c)/W - (S(c)/(2W))^2 ]` with `W` the total edge weight,
/// `W_in(c)` the intra-block weight and `S(c)` the summed member strengths.
/// Defined as 0 for a graph with no edges.
pub fn modularity(
    graph: &LabelGraph,
    partition: &CommunityPartition,
) -> Result<f64, CommunityError> {
    check_cover(graph, partition)?;
    let total = graph.total_weight();
    if total == 0.0 {
        return Ok(0.0);
    }
    let assign = partition.assignments();
    let mut intra = vec![0.0; partition.num_blocks()];
    for &(a, b, w) in graph.edges() {
        if assign[a] == assign[b] {
            intra[assign[a]] += w;
        }
    }
    let mut q = 0.0;
    for (b, block) in partition.blocks().iter().enumerate() {
        let strength: f64 = block.iter().map(|&v| graph.strength(v)).sum();
        let expected = strength / (2.0 * total);
        q += intra[b] / total - expected * expected;
    }
    Ok(q)
}

fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Two-level map equation codelength (bits) of a partition, for an undirected
/// graph with stationary visit rates `p_v = strength(v) / (2W)` and module
/// exit rates given by boundary edge weight. Vertices with `p_v = 0`
/// contribute nothing, so isolated vertices are free in any module.
pub fn map_equation(
    graph: &LabelGraph,
    partition: &CommunityPartition,
) -> Result<f64, CommunityError> {
    check_cover(graph, partition)?;
    let total = graph.total_weight();
    if total == 0.0 {
        return Err(CommunityError::EmptyGraph);
    }
    let two_w = 2.0 * total;
    let assign = partition.assignments();
    let mut exit = vec![0.0; partition.num_blocks()];
    for &(a, b, w) in graph.edges() {
        if assign[a] != assign[b] {
            exit[assign[a]] += w;
            exit[assign[b]] += w;
        }
    }

    let q_total: f64 = exit.iter().map(|e| e / two_w).sum();
    let mut codelength = 0.0;

    // Index codebook: entropy of module entry (= exit) rates.
    if q_total > 0.0 {
        let mut h = 0.0;
        for e in &exit {
            h -= plogp((e / two_w) / q_total);
        }
        codelength += q_total * h;
    }

    // Module codebooks: entropy over the exit event and member visits.
    for (b, block) in partition.blocks().iter().enumerate() {
        let q_m = exit[b] / two_w;
        let sum_p: f64 = block.iter().map(|&v| graph.strength(v) / two_w).sum();
        let p_circ = q_m + sum_p;
        if p_circ == 0.0 {
            continue;
        }
        let mut h = -plogp(q_m / p_circ);
        for &v in block {
            h -= plogp(graph.strength(v) / two_w / p_circ);
        }
        codelength += p_circ * h;
    }
    Ok(codelength)
}

fn check_cover(graph: &LabelGraph, partition: &CommunityPartition) -> Result<(), CommunityError> {
    if partition.vertex_count() != graph.vertex_count() {
        return Err(CommunityError::InvalidPartition {
            expected: graph.vertex_count(),
            message: format!("partition covers {} vertices", partition.vertex_count()),
        });
    }
    Ok(())
}

/// Runs the configured detector. Vertices with zero strength are set aside
/// first and returned as singleton blocks.
pub fn detect(
    graph: &LabelGraph,
    config: &DetectorConfig,
) -> Result<CommunityPartition, CommunityError> {
    config.validate()?;
    let view = GraphView::new(graph, config.use_weights);
    let active_blocks = if view.len() == 0 {
        Vec::new()
    } else {
        match config.algorithm {
            Algorithm::FastGreedy => fast_greedy::run(&view),
            Algorithm::LeadingEigenvector => leading_eigenvector::run(&view, config)?,
            Algorithm::LabelPropagation => label_propagation::run(&view, config)?,
            Algorithm::Walktrap => walktrap::run(&view, config),
            Algorithm::Infomap => infomap::run(&view, config),
        }
    };
    let mut blocks: Vec<Vec<usize>> = active_blocks
        .into_iter()
        .map(|block| block.into_iter().map(|v| view.original_id(v)).collect())
        .collect();
    for v in 0..graph.vertex_count() {
        if graph.degree(v) == 0 {
            blocks.push(vec![v]);
        }
    }
    CommunityPartition::new(blocks, graph.vertex_count())
}

/// Convenience wrappers mirroring the individual algorithms.
pub fn fast_greedy(
    graph: &LabelGraph,
    config: &DetectorConfig,
) -> Result<CommunityPartition, CommunityError> {
    detect(graph, &DetectorConfig { algorithm: Algorithm::FastGreedy, ..*config })
}

pub fn leading_eigenvector(
    graph: &LabelGraph,
    config: &DetectorConfig,
) -> Result<CommunityPartition, CommunityError> {
    detect(graph, &DetectorConfig { algorithm: Algorithm::LeadingEigenvector, ..*config })
}

pub fn label_propagation(
    graph: &LabelGraph,
    config: &DetectorConfig,
) -> Result<CommunityPartition, CommunityError> {
    detect(graph, &DetectorConfig { algorithm: Algorithm::LabelPropagation, ..*config })
}

pub fn walktrap(
    graph: &LabelGraph,
    config: &DetectorConfig,
) -> Result<CommunityPartition, CommunityError> {
    detect(graph, &DetectorConfig { algorithm: Algorithm::Walktrap, ..*config })
}

pub fn infomap(
    graph: &LabelGraph,
    config: &DetectorConfig,
) -> Result<CommunityPartition, CommunityError> {
    detect(graph, &DetectorConfig { algorithm: Algorithm::Infomap, ..*config })
}
