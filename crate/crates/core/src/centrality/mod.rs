//! Centrality measures.
//!
//! Edge-based measures return [`EdgeScores`] indexed like
//! [`Graph::edges`](crate::Graph::edges) together with [`NodeScores`]; the
//! node score of a current-flow measure is the sum of its incident edge
//! scores.

mod alpha_cf;
mod brandes;
mod closeness;
mod current_flow;
mod pagerank;
mod sampler;
mod scores;

pub use alpha_cf::{alpha_cf_exact, alpha_cf_sampled, AlphaCf, PairSelection, DEFAULT_WORK_BUDGET};
pub use brandes::shortest_path_betweenness;
pub use closeness::closeness;
pub use current_flow::{cf_betweenness_baseline, cf_betweenness_with_limit};
pub use pagerank::{pagerank, pagerank_with, PageRankConfig};
pub use sampler::PairSampler;
pub use scores::{node_sums, EdgeScores, MeasureInfo, NodeScores};

use crate::graph::Graph;

/// `d_v` for every node.
pub fn degree_centrality(g: &Graph) -> NodeScores {
    NodeScores {
        values: g.degrees().into_iter().map(|d| d as f64).collect(),
        info: MeasureInfo::named("degree"),
    }
}
