//! Greedy modularity agglomeration: start from singletons, repeatedly apply
//! the merge with the highest modularity gain, stop when no merge improves Q.
//!
//! Only communities joined by at least one edge are merge candidates (any
//! other merge strictly decreases Q). Ties are broken by the smallest
//! (min vertex of A, min vertex of B) pair so results are deterministic.

use std::collections::BTreeMap;

use super::view::GraphView;

struct Community {
    members: Vec<usize>,
    strength: f64,
    min_vertex: usize,
    /// Weight to each adjacent live community.
    links: BTreeMap<usize, f64>,
    alive: bool,
}

pub(super) fn run(view: &GraphView) -> Vec<Vec<usize>> {
    let n = view.len();
    let total = view.total_weight();
    if total == 0.0 {
        return (0..n).map(|v| vec![v]).collect();
    }
    let two_w_sq = 2.0 * total * total;

    let mut communities: Vec<Community> = (0..n)
        .map(|v| {
            let mut links = BTreeMap::new();
            for &(u, w) in view.neighbors(v) {
                *links.entry(u).or_insert(0.0) += w;
            }
            Community {
                members: vec![v],
                strength: view.strength(v),
                min_vertex: v,
                links,
                alive: true,
            }
        })
        .collect();

    loop {
        // Best merge across all adjacent live pairs.
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..communities.len() {
            if !communities[a].alive {
                continue;
            }
            for (&b, &weight_ab) in &communities[a].links {
                if b <= a {
                    continue;
                }
                let gain =
                    weight_ab / total - communities[a].strength * communities[b].strength / two_w_sq;
                let key = order_key(&communities[a], &communities[b]);
                let better = match best {
                    None => true,
                    Some((g, ba, bb)) => {
                        gain > g
                            || (gain == g && key < order_key(&communities[ba], &communities[bb]))
                    }
                };
                if better {
                    best = Some((gain, a, b));
                }
            }
        }

        match best {
            Some((gain, a, b)) if gain > 1e-12 => merge(&mut communities, a, b),
            _ => break,
        }
    }

    communities
        .into_iter()
        .filter(|c| c.alive)
        .map(|c| c.members)
        .collect()
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
    let b_links: Vec<(usize, f64)> = communities[b]
        .links
        .iter()
        .map(|(&c, &w)| (c, w))
        .collect();
    let b_members = std::mem::take(&mut communities[b].members);
    let b_strength = communities[b].strength;
    let b_min = communities[b].min_vertex;
    communities[b].alive = false;
    communities[b].links.clear();

    communities[a].members.extend(b_members);
    communities[a].strength += b_strength;
    communities[a].min_vertex = communities[a].min_vertex.min(b_min);
    communities[a].links.remove(&b);
    for (c, w) in b_links {
        if c == a {
            continue;
        }
        *communities[a].links.entry(c).or_insert(0.0) += w;
        let link_to_b = communities[c].links.remove(&b).unwrap_or(0.0);
        *communities[c].links.entry(a).or_insert(0.0) += link_to_b;
    }
}

#[cfg(test)]
mod tests {
    use crate::community::test_graphs::*;
    use crate::community::{detect, modularity, Algorithm, CommunityPartition, DetectorConfig};
    use crate::graph::LabelGraph;

    fn config() -> DetectorConfig {
        DetectorConfig::new(Algorithm::FastGreedy)
    }

    #[test]
    fn splits_bridged_cliques() {
        let g = bridged_cliques(5);
        let p = detect(&g, &config()).unwrap();
        assert_eq!(
            p.blocks(),
            &[vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]
        );
    }

    #[test]
    fn edgeless_graph_stays_singletons() {
        let g = LabelGraph::from_edges(4, &[]).unwrap();
        let p = detect(&g, &config()).unwrap();
        assert_eq!(p.num_blocks(), 4);
    }

    #[test]
    fn complete_graph_collapses_to_one_community() {
        let g = k4();
        let p = detect(&g, &config()).unwrap();
        assert_eq!(p.num_blocks(), 1);
    }

    #[test]
    fn result_is_at_least_as_good_as_singletons() {
        let g = bridged_cliques(4);
        let p = detect(&g, &config()).unwrap();
        let q = modularity(&g, &p).unwrap();
        let q0 = modularity(&g, &CommunityPartition::singletons(g.vertex_count())).unwrap();
        assert!(q >= q0);
    }

    #[test]
    fn isolated_vertices_stay_singletons() {
        let g = LabelGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = detect(&g, &config()).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 2], vec![3], vec![4]]);
    }
}
