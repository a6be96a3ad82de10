//! CART decision trees with Gini impurity.
//!
//! The single-label base classifier behind every transformation method.
//! Binary or multi-class, axis-aligned threshold splits, no pruning. Training
//! is fully deterministic: split ties are broken by smallest feature index,
//! then smallest threshold, and leaves break prediction ties by smallest
//! class id.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CartError {
    #[error("empty class histogram")]
    EmptyHistogram,
    #[error("cannot train on an empty dataset")]
    EmptyTrainingSet,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("feature arity mismatch: tree expects {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Training parameters. `rng_seed` is reserved for API stability; training
/// itself is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CartParams {
    /// Maximum number of split levels below the root; `None` means unlimited.
    pub max_depth: Option<usize>,
    /// Nodes with fewer rows become leaves. Must be at least 2.
    pub min_samples_split: usize,
    pub rng_seed: u64,
}

impl Default for CartParams {
    fn default() -> Self {
        Self {
            max_depth: None,
            min_samples_split: 2,
            rng_seed: 0,
        }
    }
}

impl CartParams {
    fn validate(&self) -> Result<(), CartError> {
        if self.max_depth == Some(0) {
            return Err(CartError::InvalidParams("max_depth must be >= 1".into()));
        }
        if self.min_samples_split < 2 {
            return Err(CartError::InvalidParams(
                "min_samples_split must be >= 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        counts: Vec<u32>,
    },
}

/// A trained decision tree stored as a node arena.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    nodes: Vec<Node>,
    root: usize,
    feature_arity: usize,
    num_classes: usize,
}

/// The winning split of [`best_split`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub feature: usize,
    pub threshold: f64,
    pub impurity_decrease: f64,
}

/// Gini impurity `1 - sum((n_c / n)^2)` of a class histogram.
///
/// Zero iff a single class is present; errors on an all-zero histogram.
pub fn gini_impurity(class_counts: &[u32]) -> Result<f64, CartError> {
    let total: u64 = class_counts.iter().map(|&c| u64::from(c)).sum();
    if total == 0 {
        return Err(CartError::EmptyHistogram);
    }
    let total = total as f64;
    let sum_sq: f64 = class_counts
        .iter()
        .map(|&c| {
            let p = f64::from(c) / total;
            p * p
        })
        .sum();
    Ok(1.0 - sum_sq)
}

fn histogram(classes: &[usize], rows: &[usize], num_classes: usize) -> Vec<u32> {
    let mut counts = vec![0u32; num_classes];
    for &r in rows {
        counts[classes[r]] += 1;
    }
    counts
}

fn gini_from_counts(counts: &[u32], total: f64) -> f64 {
    let sum_sq: f64 = counts
        .iter()
        .map(|&c| {
            let p = f64::from(c) / total;
            p * p
        })
        .sum();
    1.0 - sum_sq
}

/// Finds the (feature, threshold) pair minimizing the weighted child Gini
/// impurity over `rows`. Thresholds are midpoints of adjacent distinct sorted
/// feature values. Returns `None` when no split reduces impurity.
pub fn best_split(
    features: &[Vec<f64>],
    classes: &[usize],
    rows: &[usize],
) -> Option<Split> {
    if rows.len() < 2 {
        return None;
    }
    let num_classes = rows.iter().map(|&r| classes[r]).max().unwrap_or(0) + 1;
    let parent_counts = histogram(classes, rows, num_classes);
    let n = rows.len() as f64;
    let parent_gini = gini_from_counts(&parent_counts, n);
    if parent_gini == 0.0 {
        return None;
    }

    let num_features = features[rows[0]].len();
    let mut best: Option<Split> = None;
    let mut sorted: Vec<usize> = Vec::with_capacity(rows.len());
    #[allow(clippy::needless_range_loop)]
    for feature in 0..num_features {
        sorted.clear();
        sorted.extend_from_slice(rows);
        sorted.sort_by(|&a, &b| {
            features[a][feature]
                .partial_cmp(&features[b][feature])
                .expect("non-finite feature value")
        });

        let mut left_counts = vec![0u32; num_classes];
        let mut left_n = 0usize;
        for w in 0..sorted.len() - 1 {
            let row = sorted[w];
            left_counts[classes[row]] += 1;
            left_n += 1;
            let v = features[row][feature];
            let next = features[sorted[w + 1]][feature];
            if v == next {
                continue;
            }
            let threshold = v + (next - v) / 2.0;
            let right_n = rows.len() - left_n;
            let mut right_counts = parent_counts.clone();
            for (rc, lc) in right_counts.iter_mut().zip(&left_counts) {
                *rc -= lc;
            }
            let weighted = (left_n as f64 / n) * gini_from_counts(&left_counts, left_n as f64)
                + (right_n as f64 / n) * gini_from_counts(&right_counts, right_n as f64);
            let decrease = parent_gini - weighted;
            // Strict improvement keeps the first (smallest feature, smallest
            // threshold) winner on ties.
            if decrease > 0.0 && best.is_none_or(|b| decrease > b.impurity_decrease) {
                best = Some(Split {
                    feature,
                    threshold,
                    impurity_decrease: decrease,
                });
            }
        }
    }
    best
}

/// Trains a CART tree on `features` with nonnegative integer class ids.
pub fn train(
    features: &[Vec<f64>],
    classes: &[usize],
    params: &CartParams,
) -> Result<DecisionTree, CartError> {
    params.validate()?;
    if features.is_empty() || classes.len() != features.len() {
        return Err(CartError::EmptyTrainingSet);
    }
    let num_classes = classes.iter().max().copied().unwrap_or(0) + 1;
    let feature_arity = features[0].len();

    let mut tree = DecisionTree {
        nodes: Vec::new(),
        root: 0,
        feature_arity,
        num_classes,
    };
    let rows: Vec<usize> = (0..features.len()).collect();
    tree.root = grow(&mut tree.nodes, features, classes, rows, 0, params, num_classes);
    Ok(tree)
}

fn grow(
    nodes: &mut Vec<Node>,
    features: &[Vec<f64>],
    classes: &[usize],
    rows: Vec<usize>,
    depth: usize,
    params: &CartParams,
    num_classes: usize,
) -> usize {
    let counts = histogram(classes, &rows, num_classes);
    let depth_reached = params.max_depth.is_some_and(|d| depth >= d);
    let too_small = rows.len() < params.min_samples_split;
    let split = if depth_reached || too_small {
        None
    } else {
        best_split(features, classes, &rows)
    };

    match split {
        Some(split) => {
            let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
                .into_iter()
                .partition(|&r| features[r][split.feature] < split.threshold);
            let left = grow(nodes, features, classes, left_rows, depth + 1, params, num_classes);
            let right = grow(nodes, features, classes, right_rows, depth + 1, params, num_classes);
            nodes.push(Node::Split {
                feature: split.feature,
                threshold: split.threshold,
                left,
                right,
            });
            nodes.len() - 1
        }
        None => {
            nodes.push(Node::Leaf { counts });
            nodes.len() - 1
        }
    }
}

impl DecisionTree {
    pub fn feature_arity(&self) -> usize {
        self.feature_arity
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Predicts the class id for `x`, descending with `x[feature] < threshold`
    /// going left. Leaf ties resolve to the smallest class id.
    pub fn predict(&self, x: &[f64]) -> Result<usize, CartError> {
        if x.len() != self.feature_arity {
            return Err(CartError::ArityMismatch {
                expected: self.feature_arity,
                got: x.len(),
            });
        }
        let mut node = self.root;
        loop {
            match &self.nodes[node] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if x[*feature] < *threshold { *left } else { *right };
                }
                Node::Leaf { counts } => {
                    let mut best_class = 0;
                    let mut best_count = 0u32;
                    for (class, &count) in counts.iter().enumerate() {
                        if count > best_count {
                            best_count = count;
                            best_class = class;
                        }
                    }
                    return Ok(best_class);
                }
            }
        }
    }

    /// Number of split levels below the root (0 for a single leaf).
    pub fn depth(&self) -> usize {
        fn depth_of(nodes: &[Node], node: usize) -> usize {
            match &nodes[node] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => {
                    1 + depth_of(nodes, *left).max(depth_of(nodes, *right))
                }
            }
        }
        depth_of(&self.nodes, self.root)
    }

    pub fn num_leaves(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }

    /// Indented text dump for debugging; not a stability contract.
    pub fn dump(&self) -> String {
        fn walk(nodes: &[Node], node: usize, indent: usize, out: &mut String) {
            let pad = "  ".repeat(indent);
            match &nodes[node] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    let _ = writeln!(out, "{pad}if x[{feature}] < {threshold}:");
                    walk(nodes, *left, indent + 1, out);
                    let _ = writeln!(out, "{pad}else:");
                    walk(nodes, *right, indent + 1, out);
                }
                Node::Leaf { counts } => {
                    let _ = writeln!(out, "{pad}leaf {counts:?}");
                }
            }
        }
        let mut out = String::new();
        walk(&self.nodes, self.root, 0, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn separable() -> (Vec<Vec<f64>>, Vec<usize>) {
        (
            vec![vec![1.0], vec![2.0], vec![3.0], vec![4.0]],
            vec![0, 0, 1, 1],
        )
    }

    #[test]
    fn gini_of_pure_node_is_zero() {
        assert_eq!(gini_impurity(&[5, 0]).unwrap(), 0.0);
    }

    #[test]
    fn gini_of_even_binary_split_is_half() {
        assert_eq!(gini_impurity(&[1, 1]).unwrap(), 0.5);
    }

    #[test]
    fn gini_two_to_one() {
        let g = gini_impurity(&[2, 1]).unwrap();
        assert!((g - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn gini_rejects_empty_histogram() {
        assert!(matches!(gini_impurity(&[]), Err(CartError::EmptyHistogram)));
        assert!(matches!(gini_impurity(&[0, 0]), Err(CartError::EmptyHistogram)));
    }

    #[test]
    fn gini_invariant_under_permutation_and_scaling() {
        let base = gini_impurity(&[3, 1, 2]).unwrap();
        assert_eq!(gini_impurity(&[2, 3, 1]).unwrap(), base);
        assert!((gini_impurity(&[9, 3, 6]).unwrap() - base).abs() < 1e-15);
    }

    #[test]
    fn best_split_finds_midpoint() {
        let (features, classes) = separable();
        let rows: Vec<usize> = (0..4).collect();
        let split = best_split(&features, &classes, &rows).unwrap();
        assert_eq!(split.feature, 0);
        assert_eq!(split.threshold, 2.5);
        assert!((split.impurity_decrease - 0.5).abs() < 1e-15);
    }

    #[test]
    fn best_split_none_when_pure() {
        let features = vec![vec![1.0], vec![2.0]];
        let classes = vec![1, 1];
        assert_eq!(best_split(&features, &classes, &[0, 1]), None);
    }

    #[test]
    fn best_split_none_for_constant_feature() {
        let features = vec![vec![7.0], vec![7.0]];
        let classes = vec![0, 1];
        assert_eq!(best_split(&features, &classes, &[0, 1]), None);
    }

    #[test]
    fn trains_depth_one_separator() {
        let (features, classes) = separable();
        let tree = train(&features, &classes, &CartParams::default()).unwrap();
        assert_eq!(tree.depth(), 1);
        for (x, &class) in features.iter().zip(&classes) {
            assert_eq!(tree.predict(x).unwrap(), class);
        }
        assert_eq!(tree.predict(&[1.0]).unwrap(), 0);
        assert_eq!(tree.predict(&[3.7]).unwrap(), 1);
    }

    #[test]
    fn zero_max_depth_is_rejected() {
        let (features, classes) = separable();
        let params = CartParams {
            max_depth: Some(0),
            ..CartParams::default()
        };
        assert!(matches!(
            train(&features, &classes, &params),
            Err(CartError::InvalidParams(_))
        ));
    }

    #[test]
    fn depth_limit_caps_xor_accuracy() {
        let features = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ];
        let classes = vec![0, 1, 1, 0];
        let params = CartParams {
            max_depth: Some(1),
            ..CartParams::default()
        };
        let tree = train(&features, &classes, &params).unwrap();
        assert!(tree.depth() <= 1);
        let correct = features
            .iter()
            .zip(&classes)
            .filter(|(x, &c)| tree.predict(x).unwrap() == c)
            .count();
        assert!(correct <= 3, "no single threshold separates XOR");
    }

    #[test]
    fn separable_nested_data_needs_depth_two() {
        // Classes 0,1,0 along one axis: depth 1 cannot be perfect, depth 2 is.
        let features = vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]];
        let classes = vec![0, 1, 1, 0];
        let shallow = train(
            &features,
            &classes,
            &CartParams {
                max_depth: Some(1),
                ..CartParams::default()
            },
        )
        .unwrap();
        let shallow_correct = features
            .iter()
            .zip(&classes)
            .filter(|(x, &c)| shallow.predict(x).unwrap() == c)
            .count();
        assert!(shallow_correct < 4);

        let full = train(&features, &classes, &CartParams::default()).unwrap();
        assert!(full.depth() <= 2);
        for (x, &c) in features.iter().zip(&classes) {
            assert_eq!(full.predict(x).unwrap(), c);
        }
    }

    #[test]
    fn single_row_yields_single_leaf() {
        let tree = train(&[vec![5.0]], &[3], &CartParams::default()).unwrap();
        assert_eq!(tree.depth(), 0);
        assert_eq!(tree.num_leaves(), 1);
        assert_eq!(tree.predict(&[0.0]).unwrap(), 3);
    }

    #[test]
    fn leaf_ties_break_to_smallest_class() {
        // Constant feature forces a single leaf with counts [2, 2].
        let tree = train(&[vec![1.0], vec![1.0], vec![1.0], vec![1.0]], &[1, 0, 1, 0], &CartParams::default()).unwrap();
        assert_eq!(tree.num_leaves(), 1);
        assert_eq!(tree.predict(&[1.0]).unwrap(), 0);
    }

    #[test]
    fn predict_checks_arity() {
        let (features, classes) = separable();
        let tree = train(&features, &classes, &CartParams::default()).unwrap();
        assert!(matches!(
            tree.predict(&[1.0, 2.0]),
            Err(CartError::ArityMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn training_is_deterministic() {
        let features = vec![
            vec![0.3, 1.2],
            vec![2.0, 0.1],
            vec![0.9, 0.9],
            vec![1.5, 2.2],
            vec![0.1, 1.9],
        ];
        let classes = vec![0, 1, 0, 2, 1];
        let a = train(&features, &classes, &CartParams::default()).unwrap();
        let b = train(&features, &classes, &CartParams::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_training_set_is_rejected() {
        assert!(matches!(
            train(&[], &[], &CartParams::default()),
            Err(CartError::EmptyTrainingSet)
        ));
    }

    #[test]
    fn dump_mentions_threshold() {
        let (features, classes) = separable();
        let tree = train(&features, &classes, &CartParams::default()).unwrap();
        let text = tree.dump();
        assert!(text.contains("x[0] < 2.5"), "{text}");
    }
}
