//! Test-only oracles. Everything here works from plain neighborhood sets and
//! never touches the intersection table or the certificate code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mmcc::{Graph, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Graph with `n ≤ max_n` nodes and a density drawn from `[0.05, 0.95]`.
pub fn random_small_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.random_range(1..=max_n);
    let density = rng.random_range(0.05..0.95);
    random_graph(rng, n, density)
}

pub fn random_partition(rng: &mut impl Rng, n: usize) -> Partition {
    let k = rng.random_range(1..=n.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Partition::from_labels(&labels)
}

pub fn closed_sets(g: &Graph) -> Vec<BTreeSet<usize>> {
    (0..g.node_count())
        .map(|v| {
            let mut s: BTreeSet<usize> = g.neighbors(v).iter().copied().collect();
            s.insert(v);
            s
        })
        .collect()
}

pub fn naive_intersection(sets: &[BTreeSet<usize>], u: usize, v: usize) -> usize {
    sets[u].intersection(&sets[v]).count()
}

pub fn naive_symdiff(sets: &[BTreeSet<usize>], u: usize, v: usize) -> usize {
    sets[u].symmetric_difference(&sets[v]).count()
}

/// Component label per node of the "shares more than 2d" relation, by
/// repeated label propagation.
pub fn naive_pi_d(sets: &[BTreeSet<usize>], d: usize) -> Vec<usize> {
    let n = sets.len();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for u in 0..n {
            for v in 0..n {
                if u != v && naive_intersection(sets, u, v) > 2 * d && label[v] < label[u] {
                    label[u] = label[v];
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

/// `U^d_C` for the cluster with label `c`, straight from its definition.
pub fn naive_u(sets: &[BTreeSet<usize>], label: &[usize], d: usize, c: usize) -> BTreeSet<usize> {
    let n = sets.len();
    let cluster: Vec<usize> = (0..n).filter(|&u| label[u] == c).collect();
    (0..n)
        .filter(|&v| {
            (0..n)
                .filter(|&w| label[w] == label[v])
                .all(|w| cluster.iter().all(|&u| naive_symdiff(sets, w, u) <= 2 * d))
        })
        .collect()
}

/// Per-node bound `|N_v \ U^d_[v]| + |[v] \ N_v|` and the feasibility verdict.
pub fn naive_feasibility(g: &Graph, d: usize) -> (bool, Vec<usize>) {
    let sets = closed_sets(g);
    let n = g.node_count();
    let label = naive_pi_d(&sets, d);
    let mut self_ok = true;
    let mut bounds = Vec::with_capacity(n);
    for v in 0..n {
        let u = naive_u(&sets, &label, d, label[v]);
        let cluster: BTreeSet<usize> = (0..n).filter(|&x| label[x] == label[v]).collect();
        if !cluster.is_subset(&u) {
            self_ok = false;
        }
        bounds.push(sets[v].difference(&u).count() + cluster.difference(&sets[v]).count());
    }
    let feasible = self_ok && bounds.iter().all(|&b| b <= d);
    (feasible, bounds)
}

/// Smallest feasible `d` by linear scan of the naive checker.
pub fn naive_clb(g: &Graph) -> usize {
    (0..).find(|&d| naive_feasibility(g, d).0).unwrap()
}
