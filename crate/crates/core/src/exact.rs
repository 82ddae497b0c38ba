//! Brute-force ground truth for small graphs.
//!
//! Set partitions are enumerated as restricted-growth strings in
//! lexicographic order; the first optimum found is reported.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{max_disagreement, Partition};

pub const DEFAULT_NODE_LIMIT: usize = 13;

/// Bell number `B(n)`; `None` on overflow.
pub fn bell(n: usize) -> Option<u128> {
    // Bell triangle
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("non-empty row"));
        for &x in &row {
            let last = *next.last().expect("non-empty row");
            next.push(last.checked_add(x)?);
        }
        row = next;
    }
    Some(row[0])
}

/// Restricted-growth strings of length `n` in lexicographic order: `a[0] = 0`
/// and `a[i] ≤ 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<usize>,
    // prefix maxima: max_before[i] = max(labels[..i]), with max_before[0] unused
    max_before: Vec<usize>,
    done: bool,
    started: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            max_before: vec![0; n],
            done: false,
            started: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        for i in (1..n).rev() {
            if self.labels[i] <= self.max_before[i] {
                self.labels[i] += 1;
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.max_before[j] = self.max_before[j - 1].max(self.labels[j - 1]);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        if self.labels.is_empty() {
            // the single partition of the empty set
            self.done = true;
        }
        Some(self.labels.clone())
    }
}

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub opt: usize,
    pub argmin: Partition,
    pub partitions_examined: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ExactOptions {
    /// Largest node count accepted.
    pub limit: usize,
    /// Use branch-and-bound pruning. Never used for ground truth.
    pub pruned: bool,
}

impl ExactOptions {
    pub fn new() -> Self {
        Self {
            limit: DEFAULT_NODE_LIMIT,
            pruned: false,
        }
    }
}

/// Minimum of φ over all set partitions, by full enumeration.
pub fn brute_force_opt(graph: &Graph) -> Result<ExactResult> {
    brute_force_opt_with(graph, ExactOptions::new())
}

pub fn brute_force_opt_with(graph: &Graph, options: ExactOptions) -> Result<ExactResult> {
    let n = graph.node_count();
    if n > options.limit {
        let b = bell(n).map_or_else(|| "more than 2^128".to_string(), |b| b.to_string());
        return Err(Error::Capacity(format!(
            "exhaustive search over {n} nodes means Bell({n}) = {b} partitions; limit is {} nodes",
            options.limit
        )));
    }
    if options.pruned {
        return Ok(pruned_search(graph));
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut examined = 0u128;
    for labels in SetPartitions::new(n) {
        examined += 1;
        let phi = max_disagreement(graph, &Partition::from_labels(&labels));
        if best.as_ref().is_none_or(|(b, _)| phi < *b) {
            best = Some((phi, labels));
        }
    }
    let (opt, labels) = best.expect("at least one partition");
    Ok(ExactResult {
        opt,
        argmin: Partition::from_labels(&labels),
        partitions_examined: examined,
    })
}

/// Depth-first over restricted-growth strings, cutting branches where some
/// assigned node already has at least `best` disagreements among assigned nodes.
fn pruned_search(graph: &Graph) -> ExactResult {
    struct Search<'a> {
        graph: &'a Graph,
        labels: Vec<usize>,
        partial: Vec<usize>,
        best: usize,
        best_labels: Vec<usize>,
        visited: u128,
    }

    impl Search<'_> {
        fn recurse(&mut self, i: usize, max_label: usize) {
            let n = self.labels.len();
            if i == n {
                self.visited += 1;
                let worst = self.partial.iter().copied().max().unwrap_or(0);
                if worst < self.best {
                    self.best = worst;
                    self.best_labels = self.labels.clone();
                }
                return;
            }
            let top = if i == 0 { 0 } else { max_label + 1 };
            for c in 0..=top {
                self.labels[i] = c;
                // disagreement between i and each earlier node is fixed once both are assigned
                let mut bump = Vec::new();
                let mut own = 0;
                for u in 0..i {
                    let edge = self.graph.has_edge(u, i);
                    let together = self.labels[u] == c;
                    if edge != together {
                        own += 1;
                        bump.push(u);
                    }
                }
                for &u in &bump {
                    self.partial[u] += 1;
                }
                self.partial[i] = own;
                let worst = bump
                    .iter()
                    .map(|&u| self.partial[u])
                    .chain(std::iter::once(own))
                    .max()
                    .unwrap_or(0);
                if worst < self.best {
                    let next_max = if i == 0 { 0 } else { max_label.max(c) };
                    self.recurse(i + 1, next_max);
                }
                for &u in &bump {
                    self.partial[u] -= 1;
                }
                self.partial[i] = 0;
            }
        }
    }

    let n = graph.node_count();
    // singletons reach δ, so any bound above it leaves them reachable
    let mut search = Search {
        graph,
        labels: vec![0; n],
        partial: vec![0; n],
        best: graph.max_degree() + 1,
        best_labels: Vec::new(),
        visited: 0,
    };
    search.recurse(0, 0);
    ExactResult {
        opt: search.best,
        argmin: Partition::from_labels(&search.best_labels),
        partitions_examined: search.visited,
    }
}

/// Checks both forcing implications against φ(Π) for every node pair:
/// `|N_u ∩ N_v| > 2φ ⇒ same cluster` and `|N_u △ N_v| > 2φ ⇒ different clusters`.
/// Uses plain set arithmetic on neighborhoods, not the intersection table.
pub fn verify_forcing_bounds(graph: &Graph, partition: &Partition) -> bool {
    let n = graph.node_count();
    let phi = max_disagreement(graph, partition);
    let closed: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| graph.closed_iter(v).collect()).collect();
    for u in 0..n {
        for v in u + 1..n {
            let inter = closed[u].intersection(&closed[v]).count();
            let symdiff = closed[u].symmetric_difference(&closed[v]).count();
            let together = partition.same_cluster(u, v);
            if inter > 2 * phi && !together {
                return false;
            }
            if symdiff > 2 * phi && together {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bell_numbers() {
        let known = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in known.iter().enumerate() {
            assert_eq!(bell(n), Some(b));
            assert_eq!(SetPartitions::new(n).count() as u128, b);
        }
        assert_eq!(bell(13), Some(27_644_437));
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let all: Vec<Vec<usize>> = SetPartitions::new(4).collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
        assert_eq!(all[0], vec![0, 0, 0, 0]);
        assert_eq!(all.last().unwrap(), &vec![0, 1, 2, 3]);
    }

    #[test]
    fn golden_optima() {
        let r = brute_force_opt(&fixtures::hub_and_triangle()).unwrap();
        assert_eq!(r.opt, 3);
        assert_eq!(
            max_disagreement(&fixtures::hub_and_triangle(), &r.argmin),
            3
        );
        assert_eq!(r.partitions_examined, 877);

        let r = brute_force_opt(&fixtures::triangle_with_arch()).unwrap();
        assert_eq!(r.opt, 2);
        assert_eq!(r.partitions_examined, 203);

        assert_eq!(brute_force_opt(&fixtures::complete(3)).unwrap().opt, 0);
        assert_eq!(brute_force_opt(&fixtures::path(3)).unwrap().opt, 1);
        assert_eq!(brute_force_opt(&Graph::empty(0)).unwrap().opt, 0);
    }

    #[test]
    fn limit_guard_names_bell() {
        let g = Graph::empty(14);
        match brute_force_opt(&g) {
            Err(Error::Capacity(msg)) => assert!(msg.contains("Bell(14) = 190899322"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let opts = ExactOptions {
            limit: 3,
            pruned: false,
        };
        assert!(brute_force_opt_with(&fixtures::path(4), opts).is_err());
    }

    #[test]
    fn pruned_agrees_on_fixtures() {
        for g in [
            fixtures::hub_and_triangle(),
            fixtures::triangle_with_arch(),
            fixtures::path(5),
            fixtures::star(4),
        ] {
            let full = brute_force_opt(&g).unwrap();
            let fast = brute_force_opt_with(
                &g,
                ExactOptions {
                    limit: 13,
                    pruned: true,
                },
            )
            .unwrap();
            assert_eq!(full.opt, fast.opt);
            assert_eq!(max_disagreement(&g, &fast.argmin), fast.opt);
        }
    }

    #[test]
    fn forcing_bounds_on_fixtures() {
        let g = fixtures::hub_and_triangle();
        let p =
            Partition::from_clusters(7, &[vec![0, 1], vec![2], vec![3], vec![4, 5, 6]]).unwrap();
        assert!(verify_forcing_bounds(&g, &p));
        assert!(verify_forcing_bounds(
            &fixtures::complete(3),
            &Partition::whole(3)
        ));
    }
}
