//! Planted-partition instances: `k` disjoint `s`-cliques with `f` random
//! pair flips.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Name of the generator behind every synthetic instance.
pub const RNG_NAME: &str = "ChaCha8Rng";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub cliques: usize,
    pub clique_size: usize,
    pub flips: usize,
    pub seed: u64,
}

impl SynthSpec {
    pub fn node_count(&self) -> usize {
        self.cliques * self.clique_size
    }

    pub fn pair_count(&self) -> usize {
        let n = self.node_count();
        n * n.saturating_sub(1) / 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.cliques == 0 || self.clique_size == 0 {
            return Err(Error::InvalidArgument(
                "clique count and clique size must be at least 1".into(),
            ));
        }
        if self.flips > self.pair_count() {
            return Err(Error::InvalidArgument(format!(
                "{} flips requested but only {} node pairs exist",
                self.flips,
                self.pair_count()
            )));
        }
        Ok(())
    }

    /// Planted clique of node `v`.
    pub fn clique_of(&self, v: usize) -> usize {
        v / self.clique_size
    }
}

/// Maps a linear index in `0..n(n-1)/2` to the pair `(i, j)`, `i < j`, in
/// row-major order of the strict upper triangle.
fn pair_at(n: usize, mut idx: usize) -> (usize, usize) {
    let mut i = 0;
    loop {
        let row = n - 1 - i;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
        i += 1;
    }
}

/// Flips `f` distinct node pairs, drawn uniformly without replacement: a pair
/// inside one planted clique loses its edge, a pair across cliques gains one.
pub fn planted_partition_graph(spec: &SynthSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut flipped: Vec<(usize, usize)> = index::sample(&mut rng, spec.pair_count(), spec.flips)
        .into_iter()
        .map(|idx| pair_at(n, idx))
        .collect();
    flipped.sort_unstable();

    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let planted = spec.clique_of(i) == spec.clique_of(j);
            let is_flipped = flipped.binary_search(&(i, j)).is_ok();
            if planted != is_flipped {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}
