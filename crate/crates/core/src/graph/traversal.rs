use std::collections::VecDeque;

use super::Graph;
use crate::Result;

pub(crate) const UNREACHED: u32 = u32::MAX;

/// Reusable BFS state so all-sources loops allocate once per worker.
pub(crate) struct Bfs {
    pub dist: Vec<u32>,
    pub order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Bfs {
            dist: vec![UNREACHED; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    /// Runs BFS from `source`, skipping nodes whose `alive` flag is false.
    /// Afterwards `order` lists the reached nodes in visiting order and
    /// `dist` holds their distances (others are `UNREACHED`).
    pub fn run(&mut self, g: &Graph, source: usize, alive: Option<&[bool]>) {
        for &v in &self.order {
            self.dist[v] = UNREACHED;
        }
        self.order.clear();
        self.queue.clear();
        if alive.is_some_and(|a| !a[source]) {
            return;
        }
        self.dist[source] = 0;
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v] + 1;
            for &w in g.neighbors(v) {
                if self.dist[w] == UNREACHED && alive.is_none_or(|a| a[w]) {
                    self.dist[w] = next;
                    self.queue.push_back(w);
                }
            }
        }
    }
}

/// Unweighted shortest-path distances from `source`; `None` marks nodes in
/// other components.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<Option<usize>>> {
    bfs_distances_masked(g, source, None)
}

/// Like [`bfs_distances`] on the subgraph of nodes with `alive[v]`. Removed
/// nodes, and a removed source, yield `None`.
pub fn bfs_distances_masked(
    g: &Graph,
    source: usize,
    alive: Option<&[bool]>,
) -> Result<Vec<Option<usize>>> {
    g.check_node(source)?;
    let mut bfs = Bfs::new(g.node_count());
    bfs.run(g, source, alive);
    Ok(bfs
        .dist
        .iter()
        .map(|&d| (d != UNREACHED).then_some(d as usize))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component index per node; removed nodes get `usize::MAX`.
    pub labels: Vec<usize>,
    /// Component sizes, largest first.
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

pub fn connected_components(g: &Graph) -> Components {
    components_masked(g, None)
}

/// Components of the subgraph induced by `alive`. Component indices follow
/// the descending size order (ties by smallest member id).
pub(crate) fn components_masked(g: &Graph, alive: Option<&[bool]>) -> Components {
    let n = g.node_count();
    let mut raw = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for root in 0..n {
        if raw[root] != usize::MAX || alive.is_some_and(|a| !a[root]) {
            continue;
        }
        let id = sizes.len();
        raw[root] = id;
        stack.push(root);
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbors(v) {
                if raw[w] == usize::MAX && alive.is_none_or(|a| a[w]) {
                    raw[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    // stable sort keeps discovery order (smallest root first) among ties
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    let mut rank = vec![0; sizes.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    Components {
        labels: raw
            .into_iter()
            .map(|c| if c == usize::MAX { c } else { rank[c] })
            .collect(),
        sizes: order.iter().map(|&c| sizes[c]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn path_from_center() {
        let d = bfs_distances(&path(3), 1).unwrap();
        assert_eq!(d, vec![Some(1), Some(0), Some(1)]);
    }

    #[test]
    fn cross_component_is_unreachable() {
        let g = build(4, &[(0, 1), (2, 3)]);
        let d = bfs_distances(&g, 0).unwrap();
        assert_eq!(d[2], None);
        assert_eq!(d[3], None);
    }

    #[test]
    fn cycle_max_distance() {
        let d = bfs_distances(&cycle(6), 0).unwrap();
        assert_eq!(d.iter().flatten().max(), Some(&3));
    }

    #[test]
    fn out_of_range_source() {
        assert!(bfs_distances(&path(3), 3).is_err());
    }

    #[test]
    fn masked_bfs_routes_around_removed_nodes() {
        let g = cycle(6);
        let mut alive = vec![true; 6];
        alive[1] = false;
        let d = bfs_distances_masked(&g, 0, Some(&alive)).unwrap();
        assert_eq!(d[2], Some(4));
        assert_eq!(d[1], None);
        alive[0] = false;
        let d = bfs_distances_masked(&g, 0, Some(&alive)).unwrap();
        assert!(d.iter().all(Option::is_none));
    }

    #[test]
    fn component_sizes() {
        let g = build(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]);
        let c = connected_components(&g);
        assert_eq!(c.sizes, vec![3, 2]);
        assert_eq!(c.labels, vec![1, 1, 0, 0, 0]);
        assert_eq!(connected_components(&complete(5)).sizes, vec![5]);
        let empty = Graph::from_edges(4, []).unwrap().0;
        assert_eq!(connected_components(&empty).sizes, vec![1, 1, 1, 1]);
    }

    #[test]
    fn masked_components_skip_removed() {
        let g = star(4);
        let mut alive = vec![true; 5];
        alive[0] = false;
        let c = components_masked(&g, Some(&alive));
        assert_eq!(c.sizes, vec![1, 1, 1, 1]);
        assert_eq!(c.labels[0], usize::MAX);
    }
}
