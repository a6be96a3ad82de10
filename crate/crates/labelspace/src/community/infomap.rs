//! Map-equation minimization by seeded local moves plus aggregation.
//!
//! Starting from singleton modules, vertices are visited in random order and
//! moved to the neighboring module that most lowers the two-level codelength.
//! When a pass stops improving, modules collapse into supernodes (keeping
//! their internal flow as self-loops) and the search repeats on the smaller
//! graph. The best of `infomap_trials` restarts wins; ties resolve to the
//! lowest trial index, so the result is independent of scheduling.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::view::GraphView;
use super::DetectorConfig;
use crate::util::derive_seed;

fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Working graph for one aggregation level. Node visit rates are carried
/// explicitly so they survive aggregation; `two_w` stays that of the original
/// graph.
struct WorkGraph {
    p: Vec<f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
    two_w: f64,
}

impl WorkGraph {
    fn from_view(view: &GraphView) -> Self {
        let two_w = 2.0 * view.total_weight();
        let p: Vec<f64> = (0..view.len()).map(|v| view.strength(v) / two_w).collect();
        let adjacency: Vec<Vec<(usize, f64)>> = (0..view.len())
            .map(|v| view.neighbors(v).to_vec())
            .collect();
        Self {
            p,
            adjacency,
            self_loop: vec![0.0; view.len()],
            two_w,
        }
    }

    fn len(&self) -> usize {
        self.p.len()
    }
}

/// Module bookkeeping with the codelength maintained incrementally:
/// `L = plogp(q) - 2*sum_m plogp(q_m) + sum_m plogp(q_m + p_m) + const`.
struct Modules {
    assign: Vec<usize>,
    exit_w: Vec<f64>,
    sum_p: Vec<f64>,
    q_total: f64,
    sum_plogp_exit: f64,
    sum_plogp_circ: f64,
}

impl Modules {
    fn singletons(work: &WorkGraph) -> Self {
        let n = work.len();
        let assign: Vec<usize> = (0..n).collect();
        let exit_w: Vec<f64> = (0..n)
            .map(|v| work.adjacency[v].iter().map(|&(_, w)| w).sum())
            .collect();
        let sum_p = work.p.clone();
        let mut modules = Self {
            assign,
            exit_w,
            sum_p,
            q_total: 0.0,
            sum_plogp_exit: 0.0,
            sum_plogp_circ: 0.0,
        };
        for m in 0..n {
            let q_m = modules.exit_w[m] / work.two_w;
            modules.q_total += q_m;
            modules.sum_plogp_exit += plogp(q_m);
            modules.sum_plogp_circ += plogp(q_m + modules.sum_p[m]);
        }
        modules
    }

    /// Codelength change if `v` moves to `target`; `k_to` maps adjacent
    /// modules to v's edge weight into them.
    fn move_delta(
        &self,
        work: &WorkGraph,
        v: usize,
        target: usize,
        k_to: &std::collections::BTreeMap<usize, f64>,
    ) -> f64 {
        let source = self.assign[v];
        debug_assert_ne!(source, target);
        let k_total: f64 = work.adjacency[v].iter().map(|&(_, w)| w).sum();
        let k_in_source = k_to.get(&source).copied().unwrap_or(0.0);
        let k_in_target = k_to.get(&target).copied().unwrap_or(0.0);
        let p_v = work.p[v];

        let exit_src_new = self.exit_w[source] - k_total + 2.0 * k_in_source;
        let exit_tgt_new = self.exit_w[target] + k_total - 2.0 * k_in_target;
        let q_src_old = self.exit_w[source] / work.two_w;
        let q_tgt_old = self.exit_w[target] / work.two_w;
        let q_src_new = exit_src_new / work.two_w;
        let q_tgt_new = exit_tgt_new / work.two_w;
        let q_new = self.q_total - q_src_old - q_tgt_old + q_src_new + q_tgt_new;

        let circ_src_old = q_src_old + self.sum_p[source];
        let circ_tgt_old = q_tgt_old + self.sum_p[target];
        let circ_src_new = q_src_new + self.sum_p[source] - p_v;
        let circ_tgt_new = q_tgt_new + self.sum_p[target] + p_v;

        (plogp(q_new) - plogp(self.q_total))
            - 2.0
                * (plogp(q_src_new) + plogp(q_tgt_new) - plogp(q_src_old) - plogp(q_tgt_old))
            + (plogp(circ_src_new) + plogp(circ_tgt_new)
                - plogp(circ_src_old)
                - plogp(circ_tgt_old))
    }

    fn apply_move(
        &mut self,
        work: &WorkGraph,
        v: usize,
        target: usize,
        k_to: &std::collections::BTreeMap<usize, f64>,
    ) {
        let source = self.assign[v];
        let k_total: f64 = work.adjacency[v].iter().map(|&(_, w)| w).sum();
        let k_in_source = k_to.get(&source).copied().unwrap_or(0.0);
        let k_in_target = k_to.get(&target).copied().unwrap_or(0.0);
        let p_v = work.p[v];

        for m in [source, target] {
            let q_m = self.exit_w[m] / work.two_w;
            self.q_total -= q_m;
            self.sum_plogp_exit -= plogp(q_m);
            self.sum_plogp_circ -= plogp(q_m + self.sum_p[m]);
        }
        self.exit_w[source] += -k_total + 2.0 * k_in_source;
        self.exit_w[target] += k_total - 2.0 * k_in_target;
        self.sum_p[source] -= p_v;
        self.sum_p[target] += p_v;
        self.assign[v] = target;
        for m in [source, target] {
            let q_m = self.exit_w[m] / work.two_w;
            self.q_total += q_m;
            self.sum_plogp_exit += plogp(q_m);
            self.sum_plogp_circ += plogp(q_m + self.sum_p[m]);
        }
    }
}

/// One sweep-until-stable pass; true if any move happened.
fn local_moves(work: &WorkGraph, modules: &mut Modules, rng: &mut ChaCha8Rng) -> bool {
    let n = work.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut improved = false;
    loop {
        order.shuffle(rng);
        let mut moved = false;
        for &v in &order {
            if work.adjacency[v].is_empty() {
                continue;
            }
            let mut k_to: std::collections::BTreeMap<usize, f64> =
                std::collections::BTreeMap::new();
            for &(u, w) in &work.adjacency[v] {
                *k_to.entry(modules.assign[u]).or_insert(0.0) += w;
            }
            let current = modules.assign[v];
            let mut best: Option<(f64, usize)> = None;
            for &candidate in k_to.keys() {
                if candidate == current {
                    continue;
                }
                let delta = modules.move_delta(work, v, candidate, &k_to);
                if delta < -1e-12 && best.is_none_or(|(bd, _)| delta < bd) {
                    best = Some((delta, candidate));
                }
            }
            if let Some((_, target)) = best {
                modules.apply_move(work, v, target, &k_to);
                moved = true;
                improved = true;
            }
        }
        if !moved {
            return improved;
        }
    }
}

/// Collapses modules into supernodes; returns the new graph and the module
/// index of each old node.
fn aggregate(work: &WorkGraph, modules: &Modules) -> (WorkGraph, Vec<usize>) {
    let mut remap: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for &m in &modules.assign {
        let next = remap.len();
        remap.entry(m).or_insert(next);
    }
    let count = remap.len();
    let node_of: Vec<usize> = modules.assign.iter().map(|m| remap[m]).collect();

    let mut p = vec![0.0; count];
    let mut self_loop = vec![0.0; count];
    for v in 0..work.len() {
        p[node_of[v]] += work.p[v];
        self_loop[node_of[v]] += work.self_loop[v];
    }
    let mut between: std::collections::BTreeMap<(usize, usize), f64> =
        std::collections::BTreeMap::new();
    for v in 0..work.len() {
        for &(u, w) in &work.adjacency[v] {
            if u <= v {
                continue;
            }
            let (a, b) = (node_of[v], node_of[u]);
            if a == b {
                self_loop[a] += w;
            } else {
                *between.entry((a.min(b), a.max(b))).or_insert(0.0) += w;
            }
        }
    }
    let mut adjacency = vec![Vec::new(); count];
    for (&(a, b), &w) in &between {
        adjacency[a].push((b, w));
        adjacency[b].push((a, w));
    }
    (
        WorkGraph {
            p,
            adjacency,
            self_loop,
            two_w: work.two_w,
        },
        node_of,
    )
}

/// Two-level codelength of an assignment over the original active graph.
fn codelength_of(view: &GraphView, assign: &[usize], num_modules: usize) -> f64 {
    let two_w = 2.0 * view.total_weight();
    let mut exit = vec![0.0; num_modules];
    let mut sum_p = vec![0.0; num_modules];
    #[allow(clippy::needless_range_loop)]
    for v in 0..view.len() {
        sum_p[assign[v]] += view.strength(v) / two_w;
        for &(u, w) in view.neighbors(v) {
            if assign[u] != assign[v] {
                exit[assign[v]] += w;
            }
        }
    }
    let q: f64 = exit.iter().map(|e| e / two_w).sum();
    let mut codelength = 0.0;
    if q > 0.0 {
        for e in &exit {
            codelength -= plogp((e / two_w) / q) * q;
        }
    }
    for m in 0..num_modules {
        let q_m = exit[m] / two_w;
        let p_circ = q_m + sum_p[m];
        if p_circ == 0.0 {
            continue;
        }
        let mut h = -plogp(q_m / p_circ);
        for (v, &module) in assign.iter().enumerate() {
            if module == m {
                h -= plogp(view.strength(v) / two_w / p_circ);
            }
        }
        codelength += p_circ * h;
    }
    codelength
}

fn single_trial(view: &GraphView, seed: u64) -> (f64, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = WorkGraph::from_view(view);
    let mut node_of_vertex: Vec<usize> = (0..view.len()).collect();

    loop {
        let mut modules = Modules::singletons(&work);
        let improved = local_moves(&work, &mut modules, &mut rng);
        if !improved {
            break;
        }
        let (aggregated, node_of) = aggregate(&work, &modules);
        for slot in node_of_vertex.iter_mut() {
            *slot = node_of[*slot];
        }
        if aggregated.len() == work.len() {
            work = aggregated;
            break;
        }
        work = aggregated;
    }

    let num_modules = work.len();
    let codelength = codelength_of(view, &node_of_vertex, num_modules);
    (codelength, node_of_vertex)
}

pub(super) fn run(view: &GraphView, config: &DetectorConfig) -> Vec<Vec<usize>> {
    let trials: Vec<(f64, usize, Vec<usize>)> = (0..config.infomap_trials)
        .into_par_iter()
        .map(|trial| {
            let (codelength, assign) = single_trial(view, derive_seed(config.rng_seed, trial as u64));
            (codelength, trial, assign)
        })
        .collect();
    let best = trials
        .into_iter()
        .min_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap()
                .then_with(|| a.1.cmp(&b.1))
        })
        .expect("at least one trial");

    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for (v, &m) in best.2.iter().enumerate() {
        groups.entry(m).or_default().push(v);
    }
    groups.into_values().collect()
}
