//! Problem-transformation classifiers and label-space partition machinery.
//!
//! Binary Relevance trains one binary tree per label; Label Powerset maps
//! every observed label combination to a class of one multi-class problem.
//! Between the two sits the partition ensemble: split the label set into
//! disjoint blocks, run Label Powerset inside each block, and take the union
//! of the per-block predictions. Random partitions (the RAkELd baseline) are
//! counted, enumerated, or sampled here; data-driven partitions come from
//! [`crate::community`].
//!
//! A partition is always into blocks of size `k` plus one remainder block of
//! size `n mod k` — the counts `n! / ((k!)^floor(n/k) * floor(n/k)! * r!)`
//! follow that shape.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cart::{self, CartError, CartParams, DecisionTree};
use crate::community::CommunityPartition;
use crate::dataset::{Dataset, LabelMatrix};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("block size {k} is invalid for {n} labels")]
    InvalidBlockSize { k: usize, n: usize },
    #[error("partition universe has {count} members, above the cap of {cap}; sample instead")]
    CapExceeded { count: u128, cap: u128 },
    #[error("partition is not a disjoint cover of the label set: {0}")]
    InvalidPartition(String),
    #[error("dataset has no labels")]
    NoLabels,
    #[error(transparent)]
    Cart(#[from] CartError),
}

/// How a partition was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionOrigin {
    Random,
    Community,
    Apriori,
}

/// Disjoint blocks of label indices covering the label set, in canonical
/// form: sorted within blocks, blocks ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPartition {
    blocks: Vec<Vec<usize>>,
    num_labels: usize,
    origin: PartitionOrigin,
}

impl LabelPartition {
    pub fn new(
        blocks: Vec<Vec<usize>>,
        num_labels: usize,
        origin: PartitionOrigin,
    ) -> Result<Self, TransformError> {
        let mut seen = vec![false; num_labels];
        for block in &blocks {
            if block.is_empty() {
                return Err(TransformError::InvalidPartition("empty block".into()));
            }
            for &label in block {
                if label >= num_labels {
                    return Err(TransformError::InvalidPartition(format!(
                        "label {label} out of range"
                    )));
                }
                if seen[label] {
                    return Err(TransformError::InvalidPartition(format!(
                        "label {label} appears twice"
                    )));
                }
                seen[label] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(TransformError::InvalidPartition(format!(
                "label {missing} is not covered"
            )));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self {
            blocks,
            num_labels,
            origin,
        })
    }

    pub fn from_community(partition: &CommunityPartition) -> Self {
        Self {
            blocks: partition.blocks().to_vec(),
            num_labels: partition.vertex_count(),
            origin: PartitionOrigin::Community,
        }
    }

    pub fn all_singletons(num_labels: usize) -> Self {
        Self {
            blocks: (0..num_labels).map(|l| vec![l]).collect(),
            num_labels,
            origin: PartitionOrigin::Apriori,
        }
    }

    pub fn single_block(num_labels: usize) -> Self {
        Self {
            blocks: vec![(0..num_labels).collect()],
            num_labels,
            origin: PartitionOrigin::Apriori,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    pub fn origin(&self) -> PartitionOrigin {
        self.origin
    }

    /// Same `block_index: l1,l2,...` text form as community partitions.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        for (i, block) in self.blocks.iter().enumerate() {
            let members: Vec<String> = block.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{i}: {}", members.join(","));
        }
        out
    }
}

/// Bijection between observed label combinations (restricted to one block)
/// and dense class ids. Class ids follow the lexicographic order of the
/// sorted combinations, so the mapping is independent of row order — and a
/// single-label block maps absent/present to classes 0/1 exactly like a
/// binary problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpMapping {
    combinations: Vec<Vec<usize>>,
}

impl LpMapping {
    pub fn num_classes(&self) -> usize {
        self.combinations.len()
    }

    pub fn class_of(&self, combination: &[usize]) -> Option<usize> {
        self.combinations
            .binary_search_by(|c| c.as_slice().cmp(combination))
            .ok()
    }

    pub fn combination_of(&self, class: usize) -> &[usize] {
        &self.combinations[class]
    }

    pub fn combinations(&self) -> &[Vec<usize>] {
        &self.combinations
    }
}

/// Collects the distinct restrictions of label rows to `block` — the empty
/// combination included when observed — as an [`LpMapping`].
pub fn lp_fit_mapping(labels: &LabelMatrix, block: &[usize]) -> LpMapping {
    let mut distinct: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for i in 0..labels.num_rows() {
        let row = labels.row(i);
        let combination: Vec<usize> =
            block.iter().copied().filter(|&l| row[l] == 1).collect();
        if seen.insert(combination.clone()) {
            distinct.push(combination);
        }
    }
    distinct.sort();
    LpMapping {
        combinations: distinct,
    }
}

/// A Label Powerset sub-classifier for one block of labels.
#[derive(Debug, Clone)]
pub struct LpModel {
    block: Vec<usize>,
    mapping: LpMapping,
    tree: DecisionTree,
}

impl LpModel {
    pub fn block(&self) -> &[usize] {
        &self.block
    }

    pub fn mapping(&self) -> &LpMapping {
        &self.mapping
    }

    /// Predicted label subset of this model's block.
    pub fn predict(&self, x: &[f64]) -> Result<Vec<usize>, TransformError> {
        let class = self.tree.predict(x)?;
        Ok(self.mapping.combination_of(class).to_vec())
    }
}

/// Trains a Label Powerset model over `block`: rows are mapped to
/// combination classes and one CART tree learns them on the full features.
pub fn lp_train(
    dataset: &Dataset,
    block: &[usize],
    params: &CartParams,
) -> Result<LpModel, TransformError> {
    let mut sorted_block = block.to_vec();
    sorted_block.sort_unstable();
    let mapping = lp_fit_mapping(&dataset.labels, &sorted_block);
    let classes: Vec<usize> = (0..dataset.num_instances())
        .map(|i| {
            let row = dataset.labels.row(i);
            let combination: Vec<usize> = sorted_block
                .iter()
                .copied()
                .filter(|&l| row[l] == 1)
                .collect();
            mapping
                .class_of(&combination)
                .expect("combination observed during fit")
        })
        .collect();
    let tree = cart::train(&dataset.features, &classes, params)?;
    Ok(LpModel {
        block: sorted_block,
        mapping,
        tree,
    })
}

/// Binary Relevance: one binary tree per label column.
pub fn br_train(dataset: &Dataset, params: &CartParams) -> Result<Vec<DecisionTree>, TransformError> {
    if dataset.num_labels() == 0 {
        return Err(TransformError::NoLabels);
    }
    (0..dataset.num_labels())
        .map(|j| {
            let classes: Vec<usize> = (0..dataset.num_instances())
                .map(|i| dataset.labels.get(i, j) as usize)
                .collect();
            cart::train(&dataset.features, &classes, params).map_err(TransformError::from)
        })
        .collect()
}

/// Union of labels whose binary tree votes 1.
pub fn br_predict(models: &[DecisionTree], x: &[f64]) -> Result<Vec<usize>, TransformError> {
    let mut labels = Vec::new();
    for (j, tree) in models.iter().enumerate() {
        if tree.predict(x)? == 1 {
            labels.push(j);
        }
    }
    Ok(labels)
}

/// One trained LP sub-model per partition block plus the union combiner.
#[derive(Debug, Clone)]
pub struct EnsembleModel {
    partition: LabelPartition,
    submodels: Vec<LpModel>,
}

impl EnsembleModel {
    pub fn partition(&self) -> &LabelPartition {
        &self.partition
    }

    pub fn submodels(&self) -> &[LpModel] {
        &self.submodels
    }

    /// Union of the per-block predictions, ascending.
    pub fn predict(&self, x: &[f64]) -> Result<Vec<usize>, TransformError> {
        let mut labels = Vec::new();
        for model in &self.submodels {
            labels.extend(model.predict(x)?);
        }
        labels.sort_unstable();
        Ok(labels)
    }

    /// Predicts every row into a 0/1 matrix with `num_labels` columns.
    pub fn predict_matrix(&self, features: &[Vec<f64>]) -> Result<LabelMatrix, TransformError> {
        let mut matrix = LabelMatrix::zeros(features.len(), self.partition.num_labels());
        for (i, x) in features.iter().enumerate() {
            for label in self.predict(x)? {
                matrix.set(i, label, 1);
            }
        }
        Ok(matrix)
    }
}

/// Trains the partition ensemble: each block gets an LP sub-model over the
/// full feature space and its own label columns.
pub fn ensemble_train(
    dataset: &Dataset,
    partition: &LabelPartition,
    params: &CartParams,
) -> Result<EnsembleModel, TransformError> {
    if partition.num_labels() != dataset.num_labels() {
        return Err(TransformError::InvalidPartition(format!(
            "partition covers {} labels, dataset has {}",
            partition.num_labels(),
            dataset.num_labels()
        )));
    }
    let submodels = partition
        .blocks()
        .iter()
        .map(|block| lp_train(dataset, block, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EnsembleModel {
        partition: partition.clone(),
        submodels,
    })
}

fn check_block_size(n: usize, k: usize) -> Result<(), TransformError> {
    if k < 1 || k > n {
        return Err(TransformError::InvalidBlockSize { k, n });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.checked_mul((n - i) as u128)?;
        result /= (i + 1) as u128;
    }
    Some(result)
}

/// Number of distinct partitions of `n` labels into `floor(n/k)` blocks of
/// size `k` plus one remainder block. Saturates at `u128::MAX` when the true
/// count overflows 128 bits.
pub fn count_partitions(n: usize, k: usize) -> Result<u128, TransformError> {
    check_block_size(n, k)?;
    let full_blocks = n / k;
    let mut count: u128 = 1;
    let mut remaining = n;
    for j in 0..full_blocks {
        let Some(choose) = binomial(remaining, k) else {
            return Ok(u128::MAX);
        };
        let Some(product) = count.checked_mul(choose) else {
            return Ok(u128::MAX);
        };
        // Exact at every step: the intermediate value counts unordered
        // families of j+1 blocks.
        count = product / (j as u128 + 1);
        remaining -= k;
    }
    Ok(count)
}

/// Every distinct partition exactly once, sorted lexicographically by
/// canonical block lists. Errors when the universe exceeds `cap`.
pub fn enumerate_partitions(
    n: usize,
    k: usize,
    cap: u128,
) -> Result<Vec<LabelPartition>, TransformError> {
    check_block_size(n, k)?;
    let universe = count_partitions(n, k)?;
    if universe > cap {
        return Err(TransformError::CapExceeded {
            count: universe,
            cap,
        });
    }
    let remainder = n % k;
    let all: Vec<usize> = (0..n).collect();
    let mut out: Vec<Vec<Vec<usize>>> = Vec::with_capacity(universe as usize);
    if remainder == 0 {
        let mut blocks = Vec::new();
        fill_equal_blocks(&all, k, &mut blocks, &mut |blocks| out.push(blocks.to_vec()));
    } else {
        // The remainder block is the unique block of size n mod k < k, so
        // choosing its members first enumerates each partition exactly once.
        let mut chosen = Vec::with_capacity(remainder);
        choose_companions(&all, remainder, 0, &mut chosen, &mut |remainder_set| {
            let rest: Vec<usize> = all
                .iter()
                .copied()
                .filter(|l| !remainder_set.contains(l))
                .collect();
            let remainder_block = remainder_set.to_vec();
            let mut blocks = Vec::new();
            fill_equal_blocks(&rest, k, &mut blocks, &mut |blocks| {
                let mut complete = blocks.to_vec();
                complete.push(remainder_block.clone());
                out.push(complete);
            });
        });
    }
    let mut partitions = out
        .into_iter()
        .map(|blocks| LabelPartition::new(blocks, n, PartitionOrigin::Random))
        .collect::<Result<Vec<_>, _>>()?;
    partitions.sort_by(|a, b| a.blocks().cmp(b.blocks()));
    Ok(partitions)
}

/// Partitions `remaining` into equal `k`-blocks, anchoring each block on the
/// smallest remaining label so every unordered family appears exactly once.
fn fill_equal_blocks(
    remaining: &[usize],
    k: usize,
    blocks: &mut Vec<Vec<usize>>,
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    if remaining.is_empty() {
        visit(blocks);
        return;
    }
    let anchor = remaining[0];
    let pool = &remaining[1..];
    let mut chosen = Vec::with_capacity(k - 1);
    choose_companions(pool, k - 1, 0, &mut chosen, &mut |combo| {
        let mut block = Vec::with_capacity(k);
        block.push(anchor);
        block.extend_from_slice(combo);
        let next: Vec<usize> = pool.iter().copied().filter(|l| !combo.contains(l)).collect();
        blocks.push(block);
        fill_equal_blocks(&next, k, blocks, visit);
        blocks.pop();
    });
}

fn choose_companions(
    pool: &[usize],
    want: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == want {
        visit(chosen);
        return;
    }
    let needed = want - chosen.len();
    for i in start..=pool.len().saturating_sub(needed) {
        chosen.push(pool[i]);
        choose_companions(pool, want, i + 1, chosen, visit);
        chosen.pop();
    }
}

/// Draws up to `count` distinct random partitions by shuffling the labels
/// and chunking into `k`-blocks plus remainder (uniform over the universe),
/// rejecting duplicates. When `count` covers the whole universe, all
/// partitions are returned instead.
pub fn sample_partitions(
    n: usize,
    k: usize,
    count: usize,
    rng_seed: u64,
) -> Result<Vec<LabelPartition>, TransformError> {
    check_block_size(n, k)?;
    let universe = count_partitions(n, k)?;
    if count as u128 >= universe {
        return enumerate_partitions(n, k, universe);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut result = Vec::with_capacity(count);
    while result.len() < count {
        labels.shuffle(&mut rng);
        let partition = chunk_into_partition(&labels, k)?;
        if seen.insert(partition.blocks.clone()) {
            result.push(partition);
        }
    }
    Ok(result)
}

fn chunk_into_partition(shuffled: &[usize], k: usize) -> Result<LabelPartition, TransformError> {
    let n = shuffled.len();
    let full_blocks = n / k;
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(full_blocks + 1);
    for j in 0..full_blocks {
        blocks.push(shuffled[j * k..(j + 1) * k].to_vec());
    }
    if !n.is_multiple_of(k) {
        blocks.push(shuffled[full_blocks * k..].to_vec());
    }
    LabelPartition::new(blocks, n, PartitionOrigin::Random)
}

/// Block sizes from 10% to 90% of `n` in 10% steps, rounded half-up, clamped
/// to `[1, n-1]`, deduplicated ascending. Empty when `n < 2`.
pub fn k_grid(n: usize) -> Vec<usize> {
    k_for_percentages(n, &[10, 20, 30, 40, 50, 60, 70, 80, 90])
}

/// [`k_grid`] for an arbitrary percentage list.
pub fn k_for_percentages(n: usize, percentages: &[u32]) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut grid = std::collections::BTreeSet::new();
    for &percent in percentages {
        // Half-up rounding of percent*n/100 in exact integer arithmetic.
        let k = (percent as usize * n + 50) / 100;
        grid.insert(k.clamp(1, n - 1));
    }
    grid.into_iter().collect()
}

/// Batch form of [`br_predict`]: one 0/1 matrix row per feature row.
pub fn br_predict_matrix(
    models: &[DecisionTree],
    features: &[Vec<f64>],
) -> Result<LabelMatrix, TransformError> {
    let mut matrix = LabelMatrix::zeros(features.len(), models.len());
    for (i, x) in features.iter().enumerate() {
        for label in br_predict(models, x)? {
            matrix.set(i, label, 1);
        }
    }
    Ok(matrix)
}
