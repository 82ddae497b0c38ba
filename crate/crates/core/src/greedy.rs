//! Greedy joining local search.
//!
//! Each round takes a node `w` of largest disagreement and tries to merge its
//! cluster with the cluster of one of its neighbors, best-fitting neighbor
//! first. A merge is accepted only if no member of the merged cluster ends up
//! worse than the chosen neighbor currently is. When no neighbor of `w` can be
//! merged, the search stops.
//!
//! Ties are broken by [`DesignChoices`]; the 24 combinations form the variant
//! family searched by [`run_a_star`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::approx_4_sparse;
use crate::error::Error;
use crate::graph::Graph;
use crate::partition::{disagreements, Partition};

/// Tie-break among nodes of largest disagreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorstNodeTie {
    LargestDegree,
    SmallestDegree,
}

/// Tie-break among neighbors with equal sort key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborTie {
    IncreasingDegree,
    DecreasingDegree,
}

/// Primary key for ordering the neighbors of `w`, largest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SortKey {
    /// `|N_w ∩ N_v| − |N_w △ N_v|`
    Combined,
    /// `|N_w ∩ N_v|`
    IntersectionOnly,
    /// `−|N_w △ N_v|`
    NegSymdiffOnly,
}

/// Rule for discarding a candidate join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscardRule {
    /// Discard if the merged cluster's worst disagreement exceeds the
    /// neighbor's current disagreement.
    Base,
    /// Also discard if a member that is currently better off than `w` would
    /// end up exactly as bad as `w` is now.
    Strict,
}

/// What a candidate join's worst merged disagreement is compared against.
///
/// Not one of the 24 design choices. [`JoinGuard::Neighbor`] is the rule as
/// usually stated; [`JoinGuard::Worst`] compares against the current maximum,
/// which lets singleton clusters merge far more readily.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JoinGuard {
    /// Discard if `d` exceeds the neighbor's current disagreement.
    #[default]
    Neighbor,
    /// Discard if `d` exceeds the current maximum disagreement (that of `w`).
    Worst,
}

impl FromStr for JoinGuard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "neighbor" => Ok(Self::Neighbor),
            "worst" => Ok(Self::Worst),
            _ => Err(Error::InvalidArgument(format!("unknown join guard {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DesignChoices {
    pub worst_node_tie: WorstNodeTie,
    pub neighbor_tie: NeighborTie,
    pub sort_key: SortKey,
    pub discard: DiscardRule,
}

impl DesignChoices {
    /// The named variant `A`. Its neighbor tie-break is not pinned down
    /// elsewhere; decreasing degree is used here.
    pub const A: Self = Self {
        worst_node_tie: WorstNodeTie::LargestDegree,
        neighbor_tie: NeighborTie::DecreasingDegree,
        sort_key: SortKey::Combined,
        discard: DiscardRule::Strict,
    };

    /// All 24 combinations, varying the last field fastest.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(24);
        for worst_node_tie in [WorstNodeTie::LargestDegree, WorstNodeTie::SmallestDegree] {
            for neighbor_tie in [NeighborTie::IncreasingDegree, NeighborTie::DecreasingDegree] {
                for sort_key in [
                    SortKey::Combined,
                    SortKey::IntersectionOnly,
                    SortKey::NegSymdiffOnly,
                ] {
                    for discard in [DiscardRule::Base, DiscardRule::Strict] {
                        out.push(Self {
                            worst_node_tie,
                            neighbor_tie,
                            sort_key,
                            discard,
                        });
                    }
                }
            }
        }
        out
    }
}

impl Default for DesignChoices {
    fn default() -> Self {
        Self::A
    }
}

impl fmt::Display for DesignChoices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.worst_node_tie {
            WorstNodeTie::LargestDegree => "largest-degree",
            WorstNodeTie::SmallestDegree => "smallest-degree",
        };
        let b = match self.neighbor_tie {
            NeighborTie::IncreasingDegree => "increasing-degree",
            NeighborTie::DecreasingDegree => "decreasing-degree",
        };
        let c = match self.sort_key {
            SortKey::Combined => "combined",
            SortKey::IntersectionOnly => "intersection-only",
            SortKey::NegSymdiffOnly => "neg-symdiff-only",
        };
        let d = match self.discard {
            DiscardRule::Base => "base",
            DiscardRule::Strict => "strict",
        };
        write!(f, "{a}/{b}/{c}/{d}")
    }
}

impl FromStr for DesignChoices {
    type Err = Error;

    /// Parses the `a/b/c/d` form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DesignChoices::all()
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown design choices {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub partition: Partition,
    pub phi: usize,
    pub joins: usize,
    /// Maximum disagreement at the start of every round, ending with the final value.
    pub phi_trace: Vec<usize>,
}

impl GreedyOutcome {
    /// Whether the maximum disagreement never increased across rounds.
    pub fn is_monotone(&self) -> bool {
        self.phi_trace.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Runs greedy joining from `init` under the given design choices.
pub fn greedy_join(graph: &Graph, init: Partition, choices: DesignChoices) -> GreedyOutcome {
    greedy_join_guarded(graph, init, choices, JoinGuard::Neighbor)
}

pub fn greedy_join_guarded(
    graph: &Graph,
    init: Partition,
    choices: DesignChoices,
    guard: JoinGuard,
) -> GreedyOutcome {
    let n = graph.node_count();
    assert_eq!(init.node_count(), n, "partition/graph size mismatch");
    let mut partition = init;
    let mut dis = disagreements(graph, &partition);
    let mut phi_trace = Vec::new();
    let mut joins = 0;

    // stamp[x] == round marks x ∈ N_w for the current round
    let mut stamp = vec![usize::MAX; n];
    let mut in_c = vec![false; n];
    let mut merged_dis: Vec<(usize, usize)> = Vec::new();
    let mut candidates: Vec<(i64, usize)> = Vec::new();

    for round in 0.. {
        let Some(w) = select_worst(graph, &dis, choices.worst_node_tie) else {
            break;
        };
        let worst = dis[w];
        phi_trace.push(worst);

        for x in graph.closed_iter(w) {
            stamp[x] = round;
        }
        let size_w = graph.closed_size(w) as i64;
        candidates.clear();
        for &v in graph.neighbors(w) {
            if partition.same_cluster(v, w) {
                continue;
            }
            let inter = graph.closed_iter(v).filter(|&x| stamp[x] == round).count() as i64;
            let symdiff = size_w + graph.closed_size(v) as i64 - 2 * inter;
            let key = match choices.sort_key {
                SortKey::Combined => inter - symdiff,
                SortKey::IntersectionOnly => inter,
                SortKey::NegSymdiffOnly => -symdiff,
            };
            candidates.push((key, v));
        }
        candidates.sort_by(|&(ka, a), &(kb, b)| {
            let by_degree = match choices.neighbor_tie {
                NeighborTie::IncreasingDegree => graph.degree(a).cmp(&graph.degree(b)),
                NeighborTie::DecreasingDegree => graph.degree(b).cmp(&graph.degree(a)),
            };
            kb.cmp(&ka).then(by_degree).then(a.cmp(&b))
        });

        let mut joined = false;
        for &(_, v) in &candidates {
            // an earlier candidate in this round may not have merged, so clusters are unchanged
            let (cv, cw) = (partition.cluster_of(v), partition.cluster_of(w));
            let members_v = partition.members(cv).expect("live cluster");
            let members_w = partition.members(cw).expect("live cluster");
            let c_len = members_v.len() + members_w.len();
            for &u in members_v.iter().chain(members_w) {
                in_c[u] = true;
            }
            merged_dis.clear();
            let mut d = 0;
            for &u in members_v.iter().chain(members_w) {
                let common = graph.closed_iter(u).filter(|&x| in_c[x]).count();
                let du = c_len + graph.closed_size(u) - 2 * common;
                d = d.max(du);
                merged_dis.push((u, du));
            }
            for &(u, _) in &merged_dis {
                in_c[u] = false;
            }

            let limit = match guard {
                JoinGuard::Neighbor => dis[v],
                JoinGuard::Worst => worst,
            };
            if d > limit {
                continue;
            }
            if choices.discard == DiscardRule::Strict
                && merged_dis
                    .iter()
                    .any(|&(u, du)| dis[u] < worst && du == worst)
            {
                continue;
            }

            partition
                .join_clusters(cv, cw)
                .expect("distinct live clusters");
            for &(u, du) in &merged_dis {
                dis[u] = du;
            }
            joins += 1;
            joined = true;
            break;
        }
        if !joined {
            break;
        }
    }

    let phi = dis.iter().copied().max().unwrap_or(0);
    phi_trace.push(phi);
    debug_assert!(
        phi_trace.windows(2).all(|w| w[1] <= w[0]),
        "max disagreement increased"
    );
    GreedyOutcome {
        partition,
        phi,
        joins,
        phi_trace,
    }
}

fn select_worst(graph: &Graph, dis: &[usize], tie: WorstNodeTie) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in 0..dis.len() {
        let better = match best {
            None => true,
            Some(b) => {
                dis[v] > dis[b]
                    || (dis[v] == dis[b]
                        && match tie {
                            WorstNodeTie::LargestDegree => graph.degree(v) > graph.degree(b),
                            WorstNodeTie::SmallestDegree => graph.degree(v) < graph.degree(b),
                        })
            }
        };
        if better {
            best = Some(v);
        }
    }
    best
}

/// Variant `A`: greedy joining from the 4-approximation with [`DesignChoices::A`].
pub fn run_a(graph: &Graph) -> GreedyOutcome {
    run_a_with(graph, JoinGuard::Neighbor)
}

pub fn run_a_with(graph: &Graph, guard: JoinGuard) -> GreedyOutcome {
    let (init, _) = approx_4_sparse(graph);
    greedy_join_guarded(graph, init, DesignChoices::A, guard)
}

/// Runs every design-choice combination from `init`, in [`DesignChoices::all`] order.
pub fn run_all_variants(graph: &Graph, init: &Partition) -> Vec<(DesignChoices, GreedyOutcome)> {
    run_all_variants_with(graph, init, JoinGuard::Neighbor)
}

pub fn run_all_variants_with(
    graph: &Graph,
    init: &Partition,
    guard: JoinGuard,
) -> Vec<(DesignChoices, GreedyOutcome)> {
    DesignChoices::all()
        .into_par_iter()
        .map(|choices| {
            (
                choices,
                greedy_join_guarded(graph, init.clone(), choices, guard),
            )
        })
        .collect()
}

/// Variant `A*`: the best of all 24 combinations. Ties go to the earliest
/// combination in enumeration order.
pub fn run_a_star(graph: &Graph) -> (GreedyOutcome, DesignChoices) {
    run_a_star_with(graph, JoinGuard::Neighbor)
}

pub fn run_a_star_with(graph: &Graph, guard: JoinGuard) -> (GreedyOutcome, DesignChoices) {
    let (init, _) = approx_4_sparse(graph);
    let mut best: Option<(DesignChoices, GreedyOutcome)> = None;
    for (choices, outcome) in run_all_variants_with(graph, &init, guard) {
        if best.as_ref().is_none_or(|(_, b)| outcome.phi < b.phi) {
            best = Some((choices, outcome));
        }
    }
    let (choices, outcome) = best.expect("24 variants");
    (outcome, choices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::partition::max_disagreement;

    #[test]
    fn twenty_four_distinct_choices() {
        let all = DesignChoices::all();
        assert_eq!(all.len(), 24);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 24);
        assert!(all.contains(&DesignChoices::A));
    }

    #[test]
    fn choices_round_trip_text() {
        for c in DesignChoices::all() {
            assert_eq!(c.to_string().parse::<DesignChoices>().unwrap(), c);
        }
        assert!("nope".parse::<DesignChoices>().is_err());
    }

    #[test]
    fn triangle_joins_everything() {
        let g = fixtures::complete(3);
        for choices in DesignChoices::all() {
            let out = greedy_join(&g, Partition::singletons(3), choices);
            assert_eq!(out.partition.canonical(), vec![vec![0, 1, 2]]);
            assert_eq!(out.phi, 0);
            assert_eq!(out.joins, 2);
        }
    }

    #[test]
    fn path3_base_vs_strict() {
        let g = fixtures::path(3);
        let base = DesignChoices {
            discard: DiscardRule::Base,
            ..DesignChoices::A
        };
        let out = greedy_join(&g, Partition::singletons(3), base);
        assert_eq!(out.partition.canonical(), vec![vec![0, 1, 2]]);
        assert_eq!(out.phi, 1);

        let out = greedy_join(&g, Partition::singletons(3), DesignChoices::A);
        assert_eq!(out.partition.canonical(), vec![vec![0, 1], vec![2]]);
        assert_eq!(out.phi, 1);
        assert_eq!(run_a(&g).phi, 1);
    }

    #[test]
    fn hub_improves_within_bounds() {
        let g = fixtures::hub_and_triangle();
        let out = run_a(&g);
        assert!(out.is_monotone());
        assert!((3..=5).contains(&out.phi));
        assert_eq!(out.phi, max_disagreement(&g, &out.partition));
        assert_eq!(out.phi_trace[0], 5);
    }

    #[test]
    fn cliques_need_no_joins() {
        let g = fixtures::disjoint_cliques(10, 10);
        let out = run_a(&g);
        assert_eq!(out.phi, 0);
        assert_eq!(out.joins, 0);
        let (best, _) = run_a_star(&g);
        assert_eq!(best.phi, 0);
        for (_, o) in run_all_variants(&g, &Partition::singletons(100)) {
            assert_eq!(o.phi, 0);
        }
    }

    #[test]
    fn worst_guard_merges_singletons() {
        // a star from singletons: the hub cannot join any leaf under the
        // neighbor guard, but can under the worst guard
        let g = fixtures::star(4);
        let init = Partition::singletons(5);
        let strict = greedy_join(&g, init.clone(), DesignChoices::A);
        assert_eq!(strict.joins, 0);
        assert_eq!(strict.phi, 4);
        let loose = greedy_join_guarded(&g, init, DesignChoices::A, JoinGuard::Worst);
        assert!(loose.joins > 0);
        assert!(loose.phi < 4);
        assert!(loose.is_monotone());
    }

    #[test]
    fn path3_same_under_both_guards() {
        let g = fixtures::path(3);
        for choices in DesignChoices::all() {
            let a = greedy_join(&g, Partition::singletons(3), choices);
            let b = greedy_join_guarded(&g, Partition::singletons(3), choices, JoinGuard::Worst);
            assert_eq!(a.partition, b.partition, "{choices}");
        }
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(0);
        let out = run_a(&g);
        assert_eq!(out.phi, 0);
        assert_eq!(out.partition.node_count(), 0);
    }

    #[test]
    fn a_star_ties_go_to_first_variant() {
        let g = fixtures::complete(4);
        let (_, choices) = run_a_star(&g);
        assert_eq!(choices, DesignChoices::all()[0]);
    }
}
