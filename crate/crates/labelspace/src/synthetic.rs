//! Seeded toy multi-label datasets for demos, tests, and desk-scale runs.
//!
//! Labels are split into groups; every instance draws one group, activates a
//! random subset of that group's labels, and carries one informative feature
//! per group plus a noise column. Labels co-occur only inside their group, so
//! the co-occurrence graph has one dense cluster per group and community
//! detectors have real structure to find, while CART can learn the group
//! from the informative features.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{AttributeKind, AttributeMeta, Dataset, DatasetPair, LabelMatrix};

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub num_labels: usize,
    pub num_groups: usize,
    pub train_instances: usize,
    pub test_instances: usize,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            num_labels: 6,
            num_groups: 2,
            train_instances: 120,
            test_instances: 80,
            seed: 42,
        }
    }
}

/// Label groups as consecutive chunks, remainder spread over the first
/// groups.
fn label_groups(num_labels: usize, num_groups: usize) -> Vec<Vec<usize>> {
    let base = num_labels / num_groups;
    let extra = num_labels % num_groups;
    let mut groups = Vec::with_capacity(num_groups);
    let mut next = 0;
    for g in 0..num_groups {
        let size = base + usize::from(g < extra);
        groups.push((next..next + size).collect());
        next += size;
    }
    groups
}

fn generate_split(config: &SyntheticConfig, instances: usize, rng: &mut ChaCha8Rng) -> Dataset {
    let groups = label_groups(config.num_labels, config.num_groups);
    let num_features = config.num_groups + 1;
    let mut features = Vec::with_capacity(instances);
    let mut label_rows = Vec::with_capacity(instances);

    for _ in 0..instances {
        let group = rng.random_range(0..config.num_groups);
        let mut row = vec![0u8; config.num_labels];
        for &label in &groups[group] {
            if rng.random_range(0.0..1.0) < 0.75 {
                row[label] = 1;
            }
        }
        let mut feats = Vec::with_capacity(num_features);
        for g in 0..config.num_groups {
            let base = if g == group { 1.5 } else { 0.0 };
            feats.push(base + rng.random_range(-0.4..0.4));
        }
        feats.push(rng.random_range(0.0..1.0));
        features.push(feats);
        label_rows.push(row);
    }

    let mut attributes: Vec<AttributeMeta> = (0..config.num_groups)
        .map(|g| AttributeMeta {
            name: format!("signal{g}"),
            kind: AttributeKind::Numeric,
        })
        .collect();
    attributes.push(AttributeMeta {
        name: "noise".into(),
        kind: AttributeKind::Numeric,
    });

    Dataset {
        features,
        labels: LabelMatrix::from_rows(&label_rows).expect("generated rows are binary"),
        label_names: (0..config.num_labels).map(|l| format!("label{l}")).collect(),
        attributes,
    }
}

/// Generates a train/test pair from one seed.
pub fn generate(config: &SyntheticConfig) -> DatasetPair {
    assert!(config.num_groups >= 1 && config.num_labels >= config.num_groups);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let train = generate_split(config, config.train_instances, &mut rng);
    let test = generate_split(config, config.test_instances, &mut rng);
    DatasetPair { train, test }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cooccurrence_graph;

    #[test]
    fn generation_is_deterministic() {
        let config = SyntheticConfig::default();
        let a = generate(&config);
        let b = generate(&config);
        assert_eq!(a.train, b.train);
        assert_eq!(a.test, b.test);
    }

    #[test]
    fn groups_do_not_cooccur() {
        let pair = generate(&SyntheticConfig::default());
        let graph = build_cooccurrence_graph(&pair.train.labels, true).unwrap();
        for &(a, b, _) in graph.edges() {
            assert_eq!(
                usize::from(a >= 3),
                usize::from(b >= 3),
                "labels {a} and {b} belong to different groups"
            );
        }
    }

    #[test]
    fn schema_matches_across_split() {
        let pair = generate(&SyntheticConfig::default());
        assert_eq!(pair.train.label_names, pair.test.label_names);
        assert_eq!(pair.train.attributes, pair.test.attributes);
        assert_eq!(pair.train.num_instances(), 120);
        assert_eq!(pair.test.num_instances(), 80);
    }

    #[test]
    fn uneven_group_split_covers_all_labels() {
        let groups = label_groups(7, 3);
        assert_eq!(groups, vec![vec![0, 1, 2], vec![3, 4], vec![5, 6]]);
    }
}
