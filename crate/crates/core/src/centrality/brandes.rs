//! Shortest-path betweenness by Brandes' accumulation, for edges and nodes.
//!
//! Both are summed over ordered pairs and scaled by `1 / (n (n - 1))`.

use std::collections::VecDeque;

use super::scores::{EdgeScores, MeasureInfo, NodeScores};
use crate::graph::Graph;
use crate::par;

const CHUNKS: usize = 32;

struct Partial {
    nodes: Vec<f64>,
    edges: Vec<f64>,
}

fn accumulate_sources(g: &Graph, sources: std::ops::Range<usize>) -> Partial {
    let n = g.node_count();
    let mut out = Partial {
        nodes: vec![0.0; n],
        edges: vec![0.0; g.edge_count()],
    };
    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    for s in sources {
        for &v in &order {
            dist[v] = u32::MAX;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        for &w in order.iter().rev() {
            for (v, e) in g.incident(w) {
                // predecessors of w sit one level closer to s
                if dist[v] != u32::MAX && dist[v] + 1 == dist[w] {
                    let share = sigma[v] / sigma[w] * (1.0 + delta[w]);
                    out.edges[e] += share;
                    delta[v] += share;
                }
            }
            if w != s {
                out.nodes[w] += delta[w];
            }
        }
    }
    out
}

pub fn shortest_path_betweenness(g: &Graph) -> (EdgeScores, NodeScores) {
    let n = g.node_count();
    let per = n.div_ceil(CHUNKS);
    let partials = par::map_range(CHUNKS, |c| {
        accumulate_sources(g, (c * per).min(n)..((c + 1) * per).min(n))
    });
    let mut nodes = vec![0.0; n];
    let mut edges = vec![0.0; g.edge_count()];
    for p in partials {
        nodes.iter_mut().zip(&p.nodes).for_each(|(a, b)| *a += b);
        edges.iter_mut().zip(&p.edges).for_each(|(a, b)| *a += b);
    }
    let scale = if n > 1 {
        1.0 / (n * (n - 1)) as f64
    } else {
        0.0
    };
    nodes.iter_mut().for_each(|x| *x *= scale);
    edges.iter_mut().for_each(|x| *x *= scale);
    let info = MeasureInfo::named("betweenness");
    (
        EdgeScores {
            values: edges,
            std_err: None,
            info: info.clone(),
        },
        NodeScores {
            values: nodes,
            info,
        },
    )
}
