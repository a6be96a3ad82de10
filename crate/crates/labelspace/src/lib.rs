//! Data-driven label space partitioning for multi-label classification.
//!
//! Multi-label problems are commonly transformed into single-label ones by
//! splitting the label set into blocks and training one classifier per block.
//! This crate compares three ways of choosing the blocks:
//!
//! * a priori transforms — Binary Relevance (every label alone) and Label
//!   Powerset (all labels together),
//! * random partitioning into size-`k` blocks (RAkELd),
//! * data-driven partitioning: build a label co-occurrence graph from the
//!   training data and split it with a community detection algorithm
//!   (fast greedy, leading eigenvector, label propagation, walktrap, infomap),
//!   each in a weighted and an unweighted variant.
//!
//! Every method trains a CART-based ensemble, is scored by five multi-label
//! measures, and is compared against the pooled random baseline: the
//! "likelihood of beating random" is the fraction of random partitions a
//! method outperforms. A Friedman/Iman-Davenport omnibus test with Rom's
//! step-up post-hoc procedure decides which methods beat the averaged random
//! baseline with statistical support.
//!
//! # Modules
//!
//! * [`dataset`] — MULAN-style ARFF + XML dataset loading
//! * [`cart`] — the CART base classifier (Gini impurity)
//! * [`graph`] — label co-occurrence graphs
//! * [`community`] — community detection and partition quality functions
//! * [`transform`] — BR, LP, RAkELd sampling, and the partition ensemble
//! * [`metrics`] — Hamming loss, subset accuracy, Jaccard, micro/macro F1
//! * [`stats`] — likelihoods, aggregates, Friedman/Iman-Davenport, Rom
//! * [`experiment`] — experiment orchestration: run / analyze / report
//! * [`synthetic`] — toy multi-label data generators for demos and tests
//!
//! # Quick start
//!
//! ```
//! use labelspace::community::{detect, Algorithm, DetectorConfig};
//! use labelspace::dataset::LabelMatrix;
//! use labelspace::graph::build_cooccurrence_graph;
//!
//! // Rows assign labels {0,1} and {2,3}; the co-occurrence graph has two
//! // components, so every detector splits the label set in two.
//! let labels = LabelMatrix::from_rows(&[
//!     vec![1, 1, 0, 0],
//!     vec![1, 1, 0, 0],
//!     vec![0, 0, 1, 1],
//! ])
//! .unwrap();
//! let graph = build_cooccurrence_graph(&labels, true).unwrap();
//! let config = DetectorConfig::new(Algorithm::FastGreedy);
//! let partition = detect(&graph, &config).unwrap();
//! assert_eq!(partition.blocks(), &[vec![0, 1], vec![2, 3]]);
//! ```
//!
//! The `labelspace` binary exposes the full pipeline as `run`, `analyze`
//! and `report` subcommands; the `examples/` directory walks through each
//! capability on its own.

pub mod cart;
pub mod community;
pub mod dataset;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod stats;
pub mod synthetic;
pub mod transform;

mod util;
