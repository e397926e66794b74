//! Immutable undirected simple graphs in compressed adjacency form.

mod generators;
mod io;
mod stats;
mod traversal;

pub use generators::{barabasi_albert, erdos_renyi, watts_strogatz};
pub use io::{load_edge_list, load_edge_list_file, write_edge_list, LoadReport, RelabelMap};
pub use stats::{compute_stats, GraphStats};
pub use traversal::{bfs_distances, bfs_distances_masked, connected_components, Components};
pub(crate) use traversal::{components_masked, Bfs};

use crate::{Error, Result};

/// Undirected simple graph with dense node ids `0..n`.
///
/// Each edge is stored once as `(v, w)` with `v < w`; neighbour lists are
/// sorted. The graph never changes after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    // edge id for each adjacency slot, parallel to `neighbors`
    slot_edges: Vec<usize>,
    edges: Vec<(usize, usize)>,
    fingerprint: u64,
}

/// What [`Graph::from_edges`] dropped on the way in.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a simple graph on `n` nodes. Self-loops and repeated edges
    /// (in either orientation) are dropped and counted.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, BuildReport)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph("graph needs at least one node".into()));
        }
        let mut report = BuildReport::default();
        let mut canon = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, n });
                }
            }
            if a == b {
                report.self_loops += 1;
                continue;
            }
            canon.push((a.min(b), a.max(b)));
        }
        let before = canon.len();
        canon.sort_unstable();
        canon.dedup();
        report.duplicates = before - canon.len();
        Ok((Self::from_canonical(n, canon), report))
    }

    /// Builds from edges already known to be canonical, sorted and unique.
    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; n];
        for &(v, w) in &edges {
            degree[v] += 1;
            degree[w] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0; 2 * edges.len()];
        let mut slot_edges = vec![0; 2 * edges.len()];
        // Sorted canonical input puts every smaller neighbour of a node ahead
        // of its larger ones, so the lists come out sorted.
        for (id, &(v, w)) in edges.iter().enumerate() {
            neighbors[fill[v]] = w;
            slot_edges[fill[v]] = id;
            fill[v] += 1;
            neighbors[fill[w]] = v;
            slot_edges[fill[w]] = id;
            fill[w] += 1;
        }
        debug_assert!((0..n).all(|v| neighbors[offsets[v]..offsets[v + 1]]
            .windows(2)
            .all(|p| p[0] < p[1])));
        let fingerprint = fingerprint(n, &edges);
        Graph {
            offsets,
            neighbors,
            slot_edges,
            edges,
            fingerprint,
        }
    }

    /// Hash of the node count and edge set, used to tell graphs apart in
    /// row caches and consistency checks.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|v| self.degree(v)).collect()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighbours of `v` paired with the id of the connecting edge.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let r = self.offsets[v]..self.offsets[v + 1];
        self.neighbors[r.clone()]
            .iter()
            .copied()
            .zip(self.slot_edges[r].iter().copied())
    }

    /// Canonical `(v, w)` edges with `v < w`, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, v: usize, w: usize) -> Option<usize> {
        if v >= self.node_count() || w >= self.node_count() {
            return None;
        }
        let lo = self.offsets[v];
        self.neighbors(v)
            .binary_search(&w)
            .ok()
            .map(|k| self.slot_edges[lo + k])
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.edge_id(v, w).is_some()
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

    /// First node with degree 0, if any.
    pub fn isolated_node(&self) -> Option<usize> {
        (0..self.node_count()).find(|&v| self.degree(v) == 0)
    }

    /// Subgraph induced by the nodes with `keep[v] == true`, renumbered
    /// densely in increasing id order. Returns the graph and the original
    /// id of each new node.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Result<(Graph, Vec<usize>)> {
        let kept: Vec<usize> = (0..self.node_count()).filter(|&v| keep[v]).collect();
        if kept.is_empty() {
            return Err(Error::EmptyGraph("no nodes left in subgraph".into()));
        }
        let mut new_id = vec![usize::MAX; self.node_count()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(v, w)| keep[v] && keep[w])
            .map(|&(v, w)| (new_id[v], new_id[w]))
            .collect();
        Ok((Self::from_canonical(kept.len(), edges), kept))
    }
}

// FNV-1a over little-endian words
fn fingerprint(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let words =
        std::iter::once(n as u64).chain(edges.iter().flat_map(|&(v, w)| [v as u64, w as u64]));
    for word in words {
        for byte in word.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}
