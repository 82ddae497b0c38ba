//! Small named graphs used by tests, benches and the CLI.

use crate::graph::Graph;

/// Seven-node graph where the combinatorial bound (3) beats the LP bound.
pub fn hub_and_triangle() -> Graph {
    Graph::from_edges(
        7,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (2, 4),
            (3, 4),
            (4, 5),
            (4, 6),
            (5, 6),
        ],
    )
    .expect("valid fixture")
}

/// Six-node graph where the LP bound (5/4) beats the combinatorial bound (1).
pub fn triangle_with_arch() -> Graph {
    Graph::from_edges(6, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5)])
        .expect("valid fixture")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid fixture")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("valid fixture")
}

/// Star with `leaves` leaves; node 0 is the center.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid fixture")
}

/// `k` disjoint cliques of `s` nodes each; clique `i` holds nodes `i*s..(i+1)*s`.
pub fn disjoint_cliques(k: usize, s: usize) -> Graph {
    let edges = (0..k).flat_map(move |c| {
        let base = c * s;
        (0..s).flat_map(move |i| (i + 1..s).map(move |j| (base + i, base + j)))
    });
    Graph::from_edges(k * s, edges).expect("valid fixture")
}
