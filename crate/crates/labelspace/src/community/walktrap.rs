//! Random-walk agglomeration.
//!
//! Vertices close in t-step random-walk distance
//! `r_ij = sqrt(sum_k (P^t_ik - P^t_jk)^2 / s_k)` are merged bottom-up,
//! always picking the adjacent pair with the smallest Ward variance increase
//! `(1/n) * |A||B|/(|A|+|B|) * r_AB^2`, where a community's distribution is
//! the mean of its members' walk distributions. The resulting merge sequence
//! is cut at the level with maximal modularity.

use std::collections::{BTreeMap, BTreeSet};

use super::view::GraphView;
use super::DetectorConfig;

struct Community {
    members: Vec<usize>,
    dist: Vec<f64>,
    strength: f64,
    min_vertex: usize,
    neighbors: BTreeSet<usize>,
    /// Edge weight to each adjacent community, for the modularity track.
    links: BTreeMap<usize, f64>,
    alive: bool,
}

pub(super) fn run(view: &GraphView, config: &DetectorConfig) -> Vec<Vec<usize>> {
    let n = view.len();
    if n == 0 {
        return Vec::new();
    }
    let total = view.total_weight();
    let two_w = 2.0 * total;
    let walk = walk_probabilities(view, config.walktrap_steps);

    let mut communities: Vec<Community> = (0..n)
        .map(|v| {
            let mut links = BTreeMap::new();
            for &(u, w) in view.neighbors(v) {
                *links.entry(u).or_insert(0.0) += w;
            }
            Community {
                members: vec![v],
                dist: walk[v].clone(),
                strength: view.strength(v),
                min_vertex: v,
                neighbors: links.keys().copied().collect(),
                links,
                alive: true,
            }
        })
        .collect();

    let ward = |communities: &[Community], a: usize, b: usize| -> f64 {
        let ca = &communities[a];
        let cb = &communities[b];
        let r2: f64 = (0..n)
            .map(|k| {
                let d = ca.dist[k] - cb.dist[k];
                d * d / view.strength(k)
            })
            .sum();
        let na = ca.members.len() as f64;
        let nb = cb.members.len() as f64;
        (na * nb / (na + nb)) * r2 / n as f64
    };

    let mut costs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for a in 0..n {
        for &b in communities[a].neighbors.clone().iter() {
            if b > a {
                costs.insert((a, b), ward(&communities, a, b));
            }
        }
    }

    // Modularity of the all-singleton level.
    let mut q: f64 = (0..n)
        .map(|v| -(view.strength(v) / two_w).powi(2))
        .sum();
    let mut merge_log: Vec<(usize, usize)> = Vec::new();
    let mut best_level = 0usize;
    let mut best_q = q;

    loop {
        let mut chosen: Option<((usize, usize), f64)> = None;
        for (&pair, &cost) in &costs {
            let key = order_key(&communities[pair.0], &communities[pair.1]);
            let better = match chosen {
                None => true,
                Some((bp, bc)) => {
                    cost < bc
                        || (cost == bc && key < order_key(&communities[bp.0], &communities[bp.1]))
                }
            };
            if better {
                chosen = Some((pair, cost));
            }
        }
        let Some(((a, b), _)) = chosen else { break };

        let weight_ab = communities[a].links.get(&b).copied().unwrap_or(0.0);
        q += weight_ab / total
            - communities[a].strength * communities[b].strength / (two_w * total);

        merge(&mut communities, a, b);
        merge_log.push((a, b));
        if q > best_q + 1e-12 {
            best_q = q;
            best_level = merge_log.len();
        }

        let stale: Vec<(usize, usize)> = costs
            .keys()
            .filter(|&&(x, y)| x == a || y == a || x == b || y == b)
            .copied()
            .collect();
        for key in stale {
            costs.remove(&key);
        }
        for &c in communities[a].neighbors.clone().iter() {
            let key = (a.min(c), a.max(c));
            costs.insert(key, ward(&communities, key.0, key.1));
        }
    }

    rebuild(n, &merge_log[..best_level])
}

fn order_key(a: &Community, b: &Community) -> (usize, usize) {
    let (lo, hi) = if a.min_vertex < b.min_vertex {
        (a.min_vertex, b.min_vertex)
    } else {
        (b.min_vertex, a.min_vertex)
    };
    (lo, hi)
}

fn merge(communities: &mut [Community], a: usize, b: usize) {
    let na = communities[a].members.len() as f64;
    let nb = communities[b].members.len() as f64;
    let b_members = std::mem::take(&mut communities[b].members);
    let b_dist = std::mem::take(&mut communities[b].dist);
    communities[b].neighbors.clear();
    let b_links = std::mem::take(&mut communities[b].links);
    let b_strength = communities[b].strength;
    let b_min = communities[b].min_vertex;
    communities[b].alive = false;

    let com = &mut communities[a];
    for (d, bd) in com.dist.iter_mut().zip(&b_dist) {
        *d = (*d * na + bd * nb) / (na + nb);
    }
    com.members.extend(b_members);
    com.strength += b_strength;
    com.min_vertex = com.min_vertex.min(b_min);
    com.links.remove(&b);
    com.neighbors.remove(&b);
    for (c, w) in b_links {
        if c == a {
            continue;
        }
        *communities[a].links.entry(c).or_insert(0.0) += w;
        communities[a].neighbors.insert(c);
        let to_b = communities[c].links.remove(&b).unwrap_or(0.0);
        *communities[c].links.entry(a).or_insert(0.0) += to_b;
        communities[c].neighbors.remove(&b);
        communities[c].neighbors.insert(a);
    }
}

/// Dense t-step walk distributions, one row per vertex.
fn walk_probabilities(view: &GraphView, steps: usize) -> Vec<Vec<f64>> {
    let n = view.len();
    (0..n)
        .map(|start| {
            let mut current = vec![0.0; n];
            current[start] = 1.0;
            for _ in 0..steps {
                let mut next = vec![0.0; n];
                for (k, &mass) in current.iter().enumerate() {
                    if mass == 0.0 {
                        continue;
                    }
                    let s_k = view.strength(k);
                    for &(j, w) in view.neighbors(k) {
                        next[j] += mass * w / s_k;
                    }
                }
                current = next;
            }
            current
        })
        .collect()
}

/// Replays the first `level` merges over singleton communities.
fn rebuild(n: usize, merges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &(a, b) in merges {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        parent[rb] = ra;
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use crate::community::test_graphs::*;
    use crate::community::{detect, Algorithm, DetectorConfig};
    use crate::graph::LabelGraph;

    fn config() -> DetectorConfig {
        DetectorConfig::new(Algorithm::Walktrap)
    }

    #[test]
    fn disconnected_triangles_split() {
        let g = two_triangles();
        let p = detect(&g, &config()).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn single_edge_merges_into_one_block() {
        let g = LabelGraph::from_edges(2, &[(0, 1)]).unwrap();
        let p = detect(&g, &config()).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1]]);
    }

    #[test]
    fn edgeless_graph_stays_singletons() {
        let g = LabelGraph::from_edges(3, &[]).unwrap();
        let p = detect(&g, &config()).unwrap();
        assert_eq!(p.num_blocks(), 3);
    }

    #[test]
    fn splits_bridged_cliques() {
        let g = bridged_cliques(5);
        let p = detect(&g, &config()).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]);
    }
}
