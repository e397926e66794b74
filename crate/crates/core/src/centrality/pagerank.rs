use super::scores::{MeasureInfo, NodeScores};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    /// Stop once the L1 change between iterates drops below this.
    pub epsilon: f64,
    pub max_iterations: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            epsilon: 1e-12,
            max_iterations: 10_000,
        }
    }
}

/// PageRank with uniform teleportation. Isolated nodes spread their mass
/// uniformly, like a teleport.
pub fn pagerank(g: &Graph, damping: f64, epsilon: f64) -> NodeScores {
    pagerank_with(
        g,
        &PageRankConfig {
            damping,
            epsilon,
            ..Default::default()
        },
    )
}

pub fn pagerank_with(g: &Graph, cfg: &PageRankConfig) -> NodeScores {
    let n = g.node_count();
    let nf = n as f64;
    let mut pi = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut share = vec![0.0; n];
    for _ in 0..cfg.max_iterations {
        let mut dangling = 0.0;
        for v in 0..n {
            let d = g.degree(v);
            if d == 0 {
                dangling += pi[v];
                share[v] = 0.0;
            } else {
                share[v] = pi[v] / d as f64;
            }
        }
        let base = (1.0 - cfg.damping) / nf + cfg.damping * dangling / nf;
        for (w, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = g.neighbors(w).iter().map(|&v| share[v]).sum();
            *slot = base + cfg.damping * inflow;
        }
        let change: f64 = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut pi, &mut next);
        if change < cfg.epsilon {
            break;
        }
    }
    let total: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|x| *x /= total);
    NodeScores {
        values: pi,
        info: MeasureInfo {
            alpha: None,
            epsilon: Some(cfg.epsilon),
            ..MeasureInfo::named("pagerank")
        },
    }
}
