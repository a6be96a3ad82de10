//! Shared brute-force oracles for the integration suites. Everything here
//! recomputes results by definition — exhaustive enumeration, set arithmetic,
//! numerical quadrature — independently of the library's algorithms.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use labelspace::dataset::LabelMatrix;
use labelspace::graph::LabelGraph;

/// All set partitions of `0..n` via restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut result = Vec::new();
    if n == 0 {
        return result;
    }
    let mut assignment = vec![0usize; n];
    fn recurse(assignment: &mut Vec<usize>, index: usize, max_used: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = assignment.len();
        if index == n {
            let mut blocks = vec![Vec::new(); max_used + 1];
            for (v, &b) in assignment.iter().enumerate() {
                blocks[b].push(v);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max_used + 1 {
            assignment[index] = b;
            recurse(assignment, index + 1, max_used.max(b), out);
        }
    }
    recurse(&mut assignment, 1, 0, &mut result);
    result
}

/// Set partitions of `0..n` with at most `max_blocks` blocks.
pub fn partitions_up_to(n: usize, max_blocks: usize) -> Vec<Vec<Vec<usize>>> {
    all_partitions(n)
        .into_iter()
        .filter(|p| p.len() <= max_blocks)
        .collect()
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = (a + b) / 2.0;
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 60)
}

/// Standard normal CDF by quadrature of the density.
pub fn normal_cdf_quadrature(x: f64) -> f64 {
    let density = |t: f64| (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    if x >= 0.0 {
        0.5 + integrate(&density, 0.0, x, 1e-13)
    } else {
        0.5 - integrate(&density, x, 0.0, 1e-13)
    }
}

/// ln Gamma(m/2) for integer `m >= 1`, in closed form: factorials for whole
/// arguments and the double-factorial identity for half-integers.
fn ln_gamma_half_integer(m: u32) -> f64 {
    let ln_factorial = |n: u32| -> f64 { (2..=n).map(|k| (k as f64).ln()).sum() };
    if m.is_multiple_of(2) {
        ln_factorial(m / 2 - 1)
    } else {
        let t = (m - 1) / 2;
        ln_factorial(2 * t) - t as f64 * 4f64.ln() - ln_factorial(t)
            + 0.5 * std::f64::consts::PI.ln()
    }
}

/// F CDF by quadrature of the density, with the beta normalizer computed
/// from closed-form half-integer gamma values. The substitution `t = u^2`
/// removes the integrable singularity at 0 when df1 = 1.
pub fn f_cdf_quadrature(x: f64, df1: u32, df2: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let a = df1 as f64 / 2.0;
    let b = df2 as f64 / 2.0;
    let ratio = df1 as f64 / df2 as f64;
    let ln_beta = ln_gamma_half_integer(df1) + ln_gamma_half_integer(df2)
        - ln_gamma_half_integer(df1 + df2);
    let density = move |t: f64| -> f64 {
        (a * ratio.ln() + (a - 1.0) * t.ln() - (a + b) * (1.0 + ratio * t).ln() - ln_beta).exp()
    };
    let integrand = move |u: f64| -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        2.0 * u * density(u * u)
    };
    integrate(&integrand, 0.0, x.sqrt(), 1e-13).min(1.0)
}

/// Truth/prediction rows as index sets, for the definitional metric oracle.
pub struct SetBatch {
    pub truth: Vec<HashSet<usize>>,
    pub predicted: Vec<HashSet<usize>>,
    pub num_labels: usize,
}

impl SetBatch {
    pub fn from_matrices(truth: &LabelMatrix, predicted: &LabelMatrix) -> Self {
        let to_sets = |m: &LabelMatrix| -> Vec<HashSet<usize>> {
            (0..m.num_rows())
                .map(|i| m.active_labels(i).into_iter().collect())
                .collect()
        };
        Self {
            truth: to_sets(truth),
            predicted: to_sets(predicted),
            num_labels: truth.num_cols(),
        }
    }

    pub fn hamming_loss(&self) -> f64 {
        let mut mismatched = 0u64;
        for (t, p) in self.truth.iter().zip(&self.predicted) {
            mismatched += t.symmetric_difference(p).count() as u64;
        }
        mismatched as f64 / (self.truth.len() as u64 * self.num_labels as u64) as f64
    }

    pub fn subset_accuracy(&self) -> f64 {
        let exact = self
            .truth
            .iter()
            .zip(&self.predicted)
            .filter(|(t, p)| t == p)
            .count();
        exact as f64 / self.truth.len() as f64
    }

    pub fn jaccard(&self) -> f64 {
        let mut sum = 0.0;
        for (t, p) in self.truth.iter().zip(&self.predicted) {
            let union = t.union(p).count();
            sum += if union == 0 {
                1.0
            } else {
                t.intersection(p).count() as f64 / union as f64
            };
        }
        sum / self.truth.len() as f64
    }

    fn label_counts(&self, label: usize) -> (u64, u64, u64) {
        let mut tp = 0;
        let mut fp = 0;
        let mut fn_ = 0;
        for (t, p) in self.truth.iter().zip(&self.predicted) {
            match (t.contains(&label), p.contains(&label)) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                _ => {}
            }
        }
        (tp, fp, fn_)
    }

    fn f1(tp: u64, fp: u64, fn_: u64) -> f64 {
        let precision = if tp + fp == 0 {
            0.0
        } else {
            tp as f64 / (tp + fp) as f64
        };
        let recall = if tp + fn_ == 0 {
            0.0
        } else {
            tp as f64 / (tp + fn_) as f64
        };
        if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        }
    }

    pub fn f1_micro(&self) -> f64 {
        let mut tp = 0;
        let mut fp = 0;
        let mut fn_ = 0;
        for label in 0..self.num_labels {
            let (t, f, n) = self.label_counts(label);
            tp += t;
            fp += f;
            fn_ += n;
        }
        Self::f1(tp, fp, fn_)
    }

    pub fn f1_macro(&self) -> f64 {
        let sum: f64 = (0..self.num_labels)
            .map(|label| {
                let (tp, fp, fn_) = self.label_counts(label);
                Self::f1(tp, fp, fn_)
            })
            .sum();
        sum / self.num_labels as f64
    }
}

pub fn random_label_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> LabelMatrix {
    let mut out = LabelMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.random_range(0.0..1.0) < density {
                out.set(i, j, 1);
            }
        }
    }
    out
}

/// Erdos-Renyi G(n, p) graph, unit weights.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> LabelGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_range(0.0..1.0) < p {
                edges.push((a, b));
            }
        }
    }
    LabelGraph::from_edges(n, &edges).unwrap()
}

/// Two `size`-cliques joined by one bridge, with vertex ids shuffled by a
/// seeded permutation. Returns the graph and the two expected blocks in
/// canonical form.
pub fn planted_bridged_cliques(seed: u64, size: usize) -> (LabelGraph, Vec<Vec<usize>>) {
    let n = 2 * size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut permutation: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        permutation.swap(i, j);
    }
    let mut edges = Vec::new();
    for offset in [0, size] {
        for i in 0..size {
            for j in i + 1..size {
                edges.push((permutation[offset + i], permutation[offset + j]));
            }
        }
    }
    edges.push((permutation[0], permutation[size]));
    let graph = LabelGraph::from_edges(n, &edges).unwrap();

    let mut left: Vec<usize> = (0..size).map(|i| permutation[i]).collect();
    let mut right: Vec<usize> = (size..n).map(|i| permutation[i]).collect();
    left.sort_unstable();
    right.sort_unstable();
    let mut expected = vec![left, right];
    expected.sort_by_key(|b| b[0]);
    (graph, expected)
}
