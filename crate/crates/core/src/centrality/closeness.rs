use super::scores::{MeasureInfo, NodeScores};
use crate::graph::{Bfs, Graph};
use crate::par;

/// `(k - 1) / Σ_w d(v, w)` where `k` is the size of `v`'s component; for a
/// connected graph `k = n`. Isolated nodes score 0.
pub fn closeness(g: &Graph) -> NodeScores {
    let n = g.node_count();
    let values = par::map_range(n, |v| {
        let mut bfs = Bfs::new(n);
        bfs.run(g, v, None);
        let reached = bfs.order.len();
        if reached < 2 {
            return 0.0;
        }
        let total: u64 = bfs.order.iter().map(|&w| bfs.dist[w] as u64).sum();
        (reached - 1) as f64 / total as f64
    });
    NodeScores {
        values,
        info: MeasureInfo::named("closeness"),
    }
}
