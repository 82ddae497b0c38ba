//! Combinatorial lower bound.
//!
//! For a budget `d`, nodes whose closed neighborhoods share more than `2d`
//! members are forced into one cluster (`Π_d` is the partition into connected
//! components of that relation), and nodes whose neighborhoods differ in more
//! than `2d` members are forced apart. `d` is feasible when every forced
//! cluster is internally consistent and no node is left with more than `d`
//! unavoidable disagreements. The bound is the smallest feasible `d`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, IntersectionTable};
use crate::partition::Partition;

/// Everything computed while deciding feasibility of one budget `d`.
#[derive(Debug, Clone)]
pub struct ClbCertificate {
    pub d: usize,
    /// Components of the "shares more than 2d" relation. Cluster ids are
    /// `0..k` in order of their smallest node.
    pub pi_d: Partition,
    cluster_count: usize,
    // k × k, row-major; entry (i, i) is the self-compatibility bit
    compat: Vec<bool>,
    /// Per node: unavoidable disagreement given `pi_d` and the compatibility relation.
    pub per_node_bound: Vec<usize>,
    pub feasible: bool,
    /// Node attaining the largest bound, when infeasible.
    pub witness: Option<usize>,
}

impl ClbCertificate {
    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    /// Whether every pair across clusters `a` and `b` has `|N_u △ N_u'| ≤ 2d`.
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.compat[a * self.cluster_count + b]
    }

    pub fn self_compatible(&self, c: usize) -> bool {
        self.compatible(c, c)
    }

    /// `U^d_C` for cluster `c`: all nodes whose cluster is compatible with `c`, ascending.
    pub fn compatible_nodes(&self, c: usize) -> Vec<usize> {
        (0..self.pi_d.node_count())
            .filter(|&v| self.compatible(self.pi_d.cluster_of(v), c))
            .collect()
    }

    pub fn max_bound(&self) -> usize {
        self.per_node_bound.iter().copied().max().unwrap_or(0)
    }

    pub fn all_self_compatible(&self) -> bool {
        (0..self.cluster_count).all(|c| self.self_compatible(c))
    }
}

/// Connected components of `{u, v}` with `|N_u ∩ N_v| > 2d`, found by BFS in `O(n²)`.
pub fn components_pi_d(table: &IntersectionTable, d: usize) -> Partition {
    let n = table.node_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for (v, lv) in label.iter_mut().enumerate() {
                if *lv == usize::MAX && table.get(u, v) > 2 * d {
                    *lv = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    Partition::from_labels(&label)
}

/// Decides whether budget `d` is feasible. `O(n²)` given the table.
pub fn check_feasibility(graph: &Graph, table: &IntersectionTable, d: usize) -> ClbCertificate {
    let n = graph.node_count();
    let pi_d = components_pi_d(table, d);
    let k = pi_d.cluster_count();

    let mut compat = vec![false; k * k];
    for a in 0..k {
        let left = pi_d.members(a).expect("contiguous component ids");
        for b in a..k {
            let right = pi_d.members(b).expect("contiguous component ids");
            let ok = left.iter().all(|&u| {
                right
                    .iter()
                    .all(|&w| table.symmetric_difference(u, w) <= 2 * d)
            });
            compat[a * k + b] = ok;
            compat[b * k + a] = ok;
        }
    }

    let mut per_node_bound = Vec::with_capacity(n);
    for v in 0..n {
        let cv = pi_d.cluster_of(v);
        let mut outside_u = 0;
        let mut inside_cluster = 0;
        for u in graph.closed_iter(v) {
            let cu = pi_d.cluster_of(u);
            if !compat[cv * k + cu] {
                outside_u += 1;
            }
            if cu == cv {
                inside_cluster += 1;
            }
        }
        per_node_bound.push(outside_u + pi_d.cluster_size_of(v) - inside_cluster);
    }

    let all_self = (0..k).all(|c| compat[c * k + c]);
    let max_bound = per_node_bound.iter().copied().max().unwrap_or(0);
    let feasible = all_self && max_bound <= d;
    let witness = if feasible {
        None
    } else {
        per_node_bound
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))
            .map(|(v, _)| v)
    };

    ClbCertificate {
        d,
        pi_d,
        cluster_count: k,
        compat,
        per_node_bound,
        feasible,
        witness,
    }
}

/// How the smallest feasible budget is searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClbSearch {
    /// Bisection over `[0, δ]`, then an explicit check of the boundary pair.
    #[default]
    Bisection,
    /// Scan `d = 0, 1, …` until the first feasible value.
    Linear,
    /// Run both and fail if they disagree.
    CrossChecked,
}

#[derive(Debug, Clone)]
pub struct ClbResult {
    pub bound: usize,
    pub certificate: ClbCertificate,
    /// Number of feasibility checks performed.
    pub checks: usize,
}

/// Smallest feasible budget, found by bisection and boundary-verified.
pub fn compute_clb(graph: &Graph, table: &IntersectionTable) -> ClbResult {
    bisect(graph, table)
}

pub fn compute_clb_with(
    graph: &Graph,
    table: &IntersectionTable,
    search: ClbSearch,
) -> Result<ClbResult> {
    match search {
        ClbSearch::Bisection => Ok(bisect(graph, table)),
        ClbSearch::Linear => Ok(linear(graph, table)),
        ClbSearch::CrossChecked => {
            let fast = bisect(graph, table);
            let slow = linear(graph, table);
            if fast.bound != slow.bound {
                return Err(Error::Inconsistent(format!(
                    "bisection found {} but linear scan found {}",
                    fast.bound, slow.bound
                )));
            }
            Ok(fast)
        }
    }
}

fn bisect(graph: &Graph, table: &IntersectionTable) -> ClbResult {
    let mut checks = 0;
    let mut check = |d: usize| {
        checks += 1;
        check_feasibility(graph, table, d)
    };

    // d = δ is always feasible: Π_δ is all singletons and each node keeps
    // itself, so its bound is at most deg(v).
    let (mut lo, mut hi) = (0, graph.max_degree());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if check(mid).feasible {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }

    let mut d = lo;
    let mut cert = check(d);
    while !cert.feasible {
        log::warn!("bisection landed on infeasible d = {d}; stepping up");
        d += 1;
        cert = check(d);
    }
    while d > 0 {
        let below = check(d - 1);
        if !below.feasible {
            break;
        }
        log::warn!(
            "feasibility not monotone: d = {} is feasible below bisection result",
            d - 1
        );
        d -= 1;
        cert = below;
    }
    ClbResult {
        bound: d,
        certificate: cert,
        checks,
    }
}

fn linear(graph: &Graph, table: &IntersectionTable) -> ClbResult {
    let mut d = 0;
    loop {
        let cert = check_feasibility(graph, table, d);
        if cert.feasible {
            return ClbResult {
                bound: d,
                certificate: cert,
                checks: d + 1,
            };
        }
        d += 1;
    }
}
