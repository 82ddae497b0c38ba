//! Partitions of the node set and the min max disagreement objective.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Assignment of every node to exactly one cluster.
///
/// Cluster ids index into an internal slot vector and are stable across
/// joins, so they need not be contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cluster_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    cluster_count: usize,
}

impl Partition {
    /// Every node in its own cluster; cluster id equals node id.
    pub fn singletons(n: usize) -> Self {
        Self {
            cluster_of: (0..n).collect(),
            members: (0..n).map(|v| vec![v]).collect(),
            cluster_count: n,
        }
    }

    /// One cluster containing all `n` nodes (empty partition for `n = 0`).
    pub fn whole(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    /// Builds a partition from per-node labels; the label becomes the cluster id.
    pub fn from_labels(labels: &[usize]) -> Self {
        let slots = labels.iter().max().map_or(0, |&m| m + 1);
        let mut members = vec![Vec::new(); slots];
        for (v, &c) in labels.iter().enumerate() {
            members[c].push(v);
        }
        let cluster_count = members.iter().filter(|m| !m.is_empty()).count();
        Self {
            cluster_of: labels.to_vec(),
            members,
            cluster_count,
        }
    }

    /// Builds a partition from explicit clusters, which must cover `0..n` exactly once.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, cluster) in clusters.iter().enumerate() {
            if cluster.is_empty() {
                return Err(Error::InvalidArgument(format!("cluster {c} is empty")));
            }
            for &v in cluster {
                if v >= n {
                    return Err(Error::NodeOutOfRange { node: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("node {v} appears twice")));
                }
                labels[v] = c;
            }
        }
        if let Some(v) = labels.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidArgument(format!("node {v} is not covered")));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn node_count(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn same_cluster(&self, u: usize, v: usize) -> bool {
        self.cluster_of[u] == self.cluster_of[v]
    }

    /// Members of cluster `c`, or `None` if the id is unused.
    pub fn members(&self, c: usize) -> Option<&[usize]> {
        self.members
            .get(c)
            .filter(|m| !m.is_empty())
            .map(Vec::as_slice)
    }

    /// `[v]_Π`.
    pub fn cluster_members_of(&self, v: usize) -> &[usize] {
        &self.members[self.cluster_of[v]]
    }

    pub fn cluster_size_of(&self, v: usize) -> usize {
        self.members[self.cluster_of[v]].len()
    }

    /// Non-empty clusters in ascending id order.
    pub fn clusters(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_empty())
            .map(|(c, m)| (c, m.as_slice()))
    }

    /// Merges clusters `a` and `b`. The larger keeps its id (ties: the smaller
    /// id); the surviving id is returned.
    pub fn join_clusters(&mut self, a: usize, b: usize) -> Result<usize> {
        if a == b {
            return Err(Error::InvalidArgument(format!(
                "cannot join cluster {a} with itself"
            )));
        }
        for c in [a, b] {
            if self.members(c).is_none() {
                return Err(Error::UnknownCluster(c));
            }
        }
        let (size_a, size_b) = (self.members[a].len(), self.members[b].len());
        let (keep, gone) = if size_a > size_b || (size_a == size_b && a < b) {
            (a, b)
        } else {
            (b, a)
        };
        let moved = std::mem::take(&mut self.members[gone]);
        for &v in &moved {
            self.cluster_of[v] = keep;
        }
        self.members[keep].extend(moved);
        self.cluster_count -= 1;
        Ok(keep)
    }

    /// Per-node labels renumbered `0..k` in order of first appearance.
    pub fn contiguous_labels(&self) -> Vec<usize> {
        let mut remap = vec![usize::MAX; self.members.len()];
        let mut next = 0;
        self.cluster_of
            .iter()
            .map(|&c| {
                if remap[c] == usize::MAX {
                    remap[c] = next;
                    next += 1;
                }
                remap[c]
            })
            .collect()
    }

    /// Clusters as sorted node lists, ordered by smallest member. Two
    /// partitions are equal as set partitions iff these agree.
    pub fn canonical(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .clusters()
            .map(|(_, m)| {
                let mut m = m.to_vec();
                m.sort_unstable();
                m
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Writes `label<TAB>cluster` per node with contiguous cluster ids.
    pub fn write_tsv<W: Write>(&self, labels: Option<&[u64]>, mut out: W) -> Result<()> {
        for (v, c) in self.contiguous_labels().into_iter().enumerate() {
            let name = labels.map_or(v as u64, |l| l[v]);
            writeln!(out, "{name}\t{c}")?;
        }
        Ok(())
    }
}

/// Disagreement of `v` if its cluster had the given members: `|C △ N_v|`.
/// `in_cluster` must answer membership in `C`.
pub(crate) fn disagreement_with<F>(
    graph: &Graph,
    v: usize,
    cluster_len: usize,
    in_cluster: F,
) -> usize
where
    F: Fn(usize) -> bool,
{
    let common = graph.closed_iter(v).filter(|&u| in_cluster(u)).count();
    cluster_len + graph.closed_size(v) - 2 * common
}

/// `|[v]_Π △ N_v|`.
pub fn node_disagreement(graph: &Graph, partition: &Partition, v: usize) -> Result<usize> {
    graph.check_node(v)?;
    if partition.node_count() != graph.node_count() {
        return Err(Error::InvalidArgument(format!(
            "partition covers {} nodes, graph has {}",
            partition.node_count(),
            graph.node_count()
        )));
    }
    Ok(disagreement_unchecked(graph, partition, v))
}

#[inline]
pub(crate) fn disagreement_unchecked(graph: &Graph, partition: &Partition, v: usize) -> usize {
    let c = partition.cluster_of(v);
    disagreement_with(graph, v, partition.cluster_size_of(v), |u| {
        partition.cluster_of(u) == c
    })
}

/// Disagreement of every node.
pub fn disagreements(graph: &Graph, partition: &Partition) -> Vec<usize> {
    assert_eq!(
        graph.node_count(),
        partition.node_count(),
        "partition/graph size mismatch"
    );
    (0..graph.node_count())
        .map(|v| disagreement_unchecked(graph, partition, v))
        .collect()
}

/// φ(Π), the largest node disagreement; 0 for the empty graph.
pub fn max_disagreement(graph: &Graph, partition: &Partition) -> usize {
    disagreements(graph, partition)
        .into_iter()
        .max()
        .unwrap_or(0)
}
