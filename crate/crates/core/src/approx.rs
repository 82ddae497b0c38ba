//! Combinatorial 4-approximation.
//!
//! Starting from singletons, repeatedly take the unfixed node `v` of largest
//! disagreement and form its majority cluster `C = {u : |N_u ∩ N_v| > |N_v|/2}`.
//! If `C` overlaps an earlier cluster, or some member of `C` would disagree
//! with it in more than `|N_v|/4` places, stop. Otherwise fix `C` and go on.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, IntersectionTable};
use crate::partition::Partition;

/// `{u : 2·|N_u ∩ N_v| > |N_v|}`, ascending. Always contains `v`.
pub fn majority_cluster(table: &IntersectionTable, v: usize) -> Vec<usize> {
    let size = table.closed_size(v);
    (0..table.node_count())
        .filter(|&u| 2 * table.get(u, v) > size)
        .collect()
}

/// Same set as [`majority_cluster`], computed from the graph alone by
/// counting two-hop paths. `O(δ²)` per call.
pub fn majority_cluster_sparse(graph: &Graph, v: usize) -> Vec<usize> {
    let mut counts = std::collections::HashMap::new();
    for w in graph.closed_iter(v) {
        for u in graph.closed_iter(w) {
            *counts.entry(u).or_insert(0usize) += 1;
        }
    }
    let size = graph.closed_size(v);
    let mut out: Vec<usize> = counts
        .into_iter()
        .filter(|&(_, c)| 2 * c > size)
        .map(|(u, _)| u)
        .collect();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approx4Stats {
    /// Clusters fixed before the loop ended.
    pub iterations: usize,
    /// True if the loop stopped on a conflict or threshold violation rather
    /// than running out of unfixed nodes.
    pub terminated_early: bool,
}

pub fn approx_4(graph: &Graph, table: &IntersectionTable) -> (Partition, Approx4Stats) {
    run(graph, |v| majority_cluster(table, v))
}

/// [`approx_4`] without the dense table, for graphs too large to tabulate.
pub fn approx_4_sparse(graph: &Graph) -> (Partition, Approx4Stats) {
    run(graph, |v| majority_cluster_sparse(graph, v))
}

fn run<F>(graph: &Graph, mut majority: F) -> (Partition, Approx4Stats)
where
    F: FnMut(usize) -> Vec<usize>,
{
    let n = graph.node_count();
    let mut partition = Partition::singletons(n);
    let mut fixed = vec![false; n];
    let mut in_c = vec![false; n];

    // Unfixed nodes are singletons, so their disagreement is their degree.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(a.cmp(&b)));

    let mut iterations = 0;
    for &v in &order {
        if fixed[v] {
            continue;
        }
        let cluster = majority(v);
        debug_assert!(cluster.contains(&v));
        if cluster.iter().any(|&u| fixed[u]) {
            return (
                partition,
                Approx4Stats {
                    iterations,
                    terminated_early: true,
                },
            );
        }

        for &u in &cluster {
            in_c[u] = true;
        }
        let budget = graph.closed_size(v);
        let violates = cluster.iter().any(|&u| {
            let common = graph.closed_iter(u).filter(|&x| in_c[x]).count();
            let disagreement = cluster.len() + graph.closed_size(u) - 2 * common;
            // disagreement > |N_v| / 4, strictly
            4 * disagreement > budget
        });
        for &u in &cluster {
            in_c[u] = false;
        }
        if violates {
            return (
                partition,
                Approx4Stats {
                    iterations,
                    terminated_early: true,
                },
            );
        }

        let mut id = partition.cluster_of(cluster[0]);
        for &u in &cluster[1..] {
            id = partition
                .join_clusters(id, partition.cluster_of(u))
                .expect("members of C are distinct unfixed singletons");
        }
        for &u in &cluster {
            fixed[u] = true;
        }
        iterations += 1;
    }
    (
        partition,
        Approx4Stats {
            iterations,
            terminated_early: false,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::partition::max_disagreement;

    #[test]
    fn majority_examples() {
        let g = fixtures::hub_and_triangle();
        let t = IntersectionTable::build(&g).unwrap();
        assert_eq!(majority_cluster(&t, 4), vec![4]);
        assert_eq!(majority_cluster_sparse(&g, 4), vec![4]);

        let p3 = fixtures::path(3);
        let t3 = IntersectionTable::build(&p3).unwrap();
        assert_eq!(majority_cluster(&t3, 1), vec![0, 1, 2]);

        let cliques = fixtures::disjoint_cliques(3, 10);
        let tc = IntersectionTable::build(&cliques).unwrap();
        assert_eq!(majority_cluster(&tc, 12), (10..20).collect::<Vec<_>>());
    }

    #[test]
    fn hub_stops_immediately() {
        let g = fixtures::hub_and_triangle();
        let t = IntersectionTable::build(&g).unwrap();
        let (p, stats) = approx_4(&g, &t);
        assert_eq!(p.cluster_count(), 7);
        assert_eq!(max_disagreement(&g, &p), 5);
        assert!(stats.terminated_early);
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn disjoint_cliques_recovered() {
        let g = fixtures::disjoint_cliques(10, 10);
        let t = IntersectionTable::build(&g).unwrap();
        let (p, stats) = approx_4(&g, &t);
        assert_eq!(p.canonical(), fixtures_cliques(10, 10));
        assert_eq!(max_disagreement(&g, &p), 0);
        assert!(!stats.terminated_early);
        assert_eq!(stats.iterations, 10);
    }

    fn fixtures_cliques(k: usize, s: usize) -> Vec<Vec<usize>> {
        (0..k).map(|c| (c * s..(c + 1) * s).collect()).collect()
    }

    #[test]
    fn triangle_is_one_cluster() {
        let g = fixtures::complete(3);
        let (p, _) = approx_4(&g, &IntersectionTable::build(&g).unwrap());
        assert_eq!(p.canonical(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn isolated_nodes_become_fixed_singletons() {
        // C = {v} with disagreement 0 within budget |N_v|/4 = 1/4
        let g = Graph::empty(3);
        let (p, stats) = approx_4_sparse(&g);
        assert_eq!(p.cluster_count(), 3);
        assert_eq!(stats.iterations, 3);
        assert!(!stats.terminated_early);
    }

    #[test]
    fn star_center_exceeds_budget() {
        // leaves share exactly |N_0|/2 = 2 with the center, so C = {0} and 4·3 > 4
        let g = fixtures::star(3);
        let (p, stats) = approx_4_sparse(&g);
        assert!(stats.terminated_early);
        assert_eq!(p.cluster_count(), 4);
    }

    #[test]
    fn boundary_equality_proceeds() {
        // K4 minus {2,3}: C = V, nodes 2 and 3 disagree in exactly |N_0|/4 = 1 place
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let (p, stats) = approx_4_sparse(&g);
        assert_eq!(p.canonical(), vec![vec![0, 1, 2, 3]]);
        assert!(!stats.terminated_early);
        assert_eq!(max_disagreement(&g, &p), 1);
    }
}
