//! Asynchronous label propagation.
//!
//! Every vertex starts with a unique tag. Sweeps visit vertices in a fresh
//! seeded random order and each vertex adopts the tag with the largest
//! weighted presence among its neighbors (keeping its own tag when it is
//! already among the dominant ones, picking uniformly otherwise). The run
//! converges when every vertex carries a dominant tag of its neighborhood.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::view::GraphView;
use super::{CommunityError, DetectorConfig};

pub(super) fn run(
    view: &GraphView,
    config: &DetectorConfig,
) -> Result<Vec<Vec<usize>>, CommunityError> {
    let n = view.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut tags: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..config.lpa_max_sweeps {
        order.shuffle(&mut rng);
        for &v in &order {
            if view.neighbors(v).is_empty() {
                continue;
            }
            let dominant = dominant_tags(view, &tags, v);
            if !dominant.contains(&tags[v]) {
                let pick = dominant[rng.random_range(0..dominant.len())];
                tags[v] = pick;
            }
        }
        if converged(view, &tags) {
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (v, &t) in tags.iter().enumerate() {
                groups.entry(t).or_default().push(v);
            }
            return Ok(groups.into_values().collect());
        }
    }
    Err(CommunityError::NoConvergence {
        sweeps: config.lpa_max_sweeps,
    })
}

/// Tags with maximal weighted vote in v's neighborhood, ascending.
fn dominant_tags(view: &GraphView, tags: &[usize], v: usize) -> Vec<usize> {
    let mut votes: BTreeMap<usize, f64> = BTreeMap::new();
    for &(u, w) in view.neighbors(v) {
        *votes.entry(tags[u]).or_insert(0.0) += w;
    }
    let max = votes.values().fold(0.0f64, |m, &w| m.max(w));
    votes
        .into_iter()
        .filter(|&(_, w)| w == max)
        .map(|(t, _)| t)
        .collect()
}

fn converged(view: &GraphView, tags: &[usize]) -> bool {
    (0..view.len()).all(|v| {
        view.neighbors(v).is_empty() || dominant_tags(view, tags, v).contains(&tags[v])
    })
}
