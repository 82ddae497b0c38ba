//! Graph storage, SNAP-style edge-list ingestion and the pairwise
//! closed-neighborhood intersection table.
//!
//! A [`Graph`] holds the positive edges of a complete signed graph. Every pair
//! of nodes that is not an edge is implicitly negative. Adjacency is stored
//! open (without the node itself) and sorted; the closed neighborhood
//! `N_v = {v} ∪ adj(v)` is applied at the accessors.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Refuse dense intersection tables above this many nodes unless told otherwise.
pub const DEFAULT_TABLE_NODE_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    max_degree: usize,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
            max_degree: 0,
        }
    }

    /// Builds a graph on nodes `0..n`. Duplicate edges are merged and
    /// self-loops ignored.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, n });
                }
            }
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        Ok(Self::from_adjacency_unchecked(adjacency))
    }

    fn from_adjacency_unchecked(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut twice_edges = 0;
        let mut max_degree = 0;
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice_edges += list.len();
            max_degree = max_degree.max(list.len());
        }
        Self {
            adjacency,
            edge_count: twice_edges / 2,
            max_degree,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Largest degree δ; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Sorted open neighborhood of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// `|N_v|`, the size of the closed neighborhood.
    pub fn closed_size(&self, v: usize) -> usize {
        self.adjacency[v].len() + 1
    }

    /// Iterates `N_v`: `v` first, then its neighbors in ascending order.
    pub fn closed_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(v).chain(self.adjacency[v].iter().copied())
    }

    pub fn closed_neighborhood(&self, v: usize) -> Result<ClosedNeighborhood> {
        self.check_node(v)?;
        let mut members = Vec::with_capacity(self.closed_size(v));
        members.extend(self.closed_iter(v));
        members.sort_unstable();
        Ok(ClosedNeighborhood { node: v, members })
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `|N_u ∩ N_v|` by a sorted merge of the two adjacency lists.
    pub fn intersection_size(&self, u: usize, v: usize) -> usize {
        if u == v {
            return self.closed_size(u);
        }
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        // u and v each lie in both closed neighborhoods iff they are adjacent
        if self.has_edge(u, v) {
            common += 2;
        }
        common
    }

    pub(crate) fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.node_count(),
            })
        }
    }
}

/// `N_v = {v} ∪ adj(v)`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedNeighborhood {
    node: usize,
    members: Vec<usize>,
}

impl ClosedNeighborhood {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: a closed neighborhood contains its own node.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.binary_search(&u).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }
}

/// Result of reading an edge list: the graph plus the label mapping.
#[derive(Debug, Clone, Default)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// `labels[id]` is the original label of internal node `id`.
    pub labels: Vec<u64>,
    pub self_loops_dropped: usize,
    pub duplicate_edges: usize,
}

impl ParsedGraph {
    pub fn label_of(&self, id: usize) -> Option<u64> {
        self.labels.get(id).copied()
    }

    pub fn id_of(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// Reads a whitespace-separated edge list. Lines starting with `#` and blank
/// lines are skipped. Labels become ids `0..n` in order of first appearance.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<ParsedGraph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut self_loops = 0;

    let mut intern = |label: u64, labels: &mut Vec<u64>| -> usize {
        *ids.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two node labels, got {trimmed:?}"),
            });
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node label {tok:?}"),
            })
        };
        let (a, b) = (parse(a)?, parse(b)?);
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        if u == v {
            self_loops += 1;
            continue;
        }
        edges.push((u.min(v), u.max(v)));
    }

    let raw = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let duplicate_edges = raw - edges.len();
    if self_loops > 0 {
        log::warn!("dropped {self_loops} self-loop line(s)");
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok(ParsedGraph {
        graph,
        labels,
        self_loops_dropped: self_loops,
        duplicate_edges,
    })
}

pub fn parse_edge_list_str(text: &str) -> Result<ParsedGraph> {
    parse_edge_list(text.as_bytes())
}

/// Writes one `u v` line per edge, using `labels` when given.
pub fn write_edge_list<W: Write>(graph: &Graph, labels: Option<&[u64]>, mut out: W) -> Result<()> {
    let name = |v: usize| labels.map_or(v as u64, |l| l[v]);
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", name(u), name(v))?;
    }
    Ok(())
}

/// Dense symmetric table of `|N_u ∩ N_v|` over closed neighborhoods,
/// including the diagonal `I_{v,v} = |N_v|`.
#[derive(Debug, Clone)]
pub struct IntersectionTable {
    n: usize,
    // upper triangle, row-major, diagonal included
    counts: Vec<u32>,
}

impl IntersectionTable {
    pub fn build(graph: &Graph) -> Result<Self> {
        Self::build_with_limit(graph, DEFAULT_TABLE_NODE_LIMIT)
    }

    /// Counts, for every node `w` and every pair `{u, v} ⊆ N_w`, one common
    /// neighbor. Runs in `O(n² + n·δ²)`.
    pub fn build_with_limit(graph: &Graph, node_limit: usize) -> Result<Self> {
        let n = graph.node_count();
        if n > node_limit {
            return Err(Error::Capacity(format!(
                "intersection table for {n} nodes exceeds the limit of {node_limit}"
            )));
        }
        let len = n
            .checked_mul(n + 1)
            .map(|x| x / 2)
            .ok_or_else(|| Error::Capacity(format!("intersection table for {n} nodes")))?;
        let mut counts: Vec<u32> = Vec::new();
        counts
            .try_reserve_exact(len)
            .map_err(|e| Error::Capacity(format!("intersection table of {len} entries: {e}")))?;
        counts.resize(len, 0);

        let mut table = Self { n, counts };
        let mut closed = Vec::with_capacity(graph.max_degree() + 1);
        for w in 0..n {
            closed.clear();
            closed.extend(graph.closed_iter(w));
            closed.sort_unstable();
            for (i, &u) in closed.iter().enumerate() {
                for &v in &closed[i..] {
                    let idx = table.index(u, v);
                    table.counts[idx] += 1;
                }
            }
        }
        Ok(table)
    }

    #[inline]
    fn index(&self, u: usize, v: usize) -> usize {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        // row a starts at a*n - a*(a-1)/2
        a * self.n - a * a.saturating_sub(1) / 2 + (b - a)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `|N_u ∩ N_v|`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.counts[self.index(u, v)] as usize
    }

    /// `|N_v|`.
    #[inline]
    pub fn closed_size(&self, v: usize) -> usize {
        self.get(v, v)
    }

    /// `|N_u △ N_v| = |N_u| + |N_v| − 2·|N_u ∩ N_v|`.
    #[inline]
    pub fn symmetric_difference(&self, u: usize, v: usize) -> usize {
        self.closed_size(u) + self.closed_size(v) - 2 * self.get(u, v)
    }
}
