//! Classic current-flow betweenness: unit resistances, no leakage, unit
//! current from `s` to `t`.
//!
//! Grounding any one node `r` makes the reduced Laplacian invertible. With
//! `G` its inverse (zero-padded at `r`), the potentials for the pair `(s, t)`
//! are `G e_s - G e_t` up to a constant, so the pair's drop on edge `(v, w)`
//! is `h[s] - h[t]` with `h = G[v, ·] - G[w, ·]`. The sum over ordered pairs
//! of `|h[s] - h[t]|` then comes from sorting `h`.

use super::scores::{node_sums, EdgeScores, MeasureInfo, NodeScores};
use crate::graph::{connected_components, Graph};
use crate::solver::{kirchhoff_matrix, Cholesky, DEFAULT_DENSE_LIMIT};
use crate::{par, Error, Result};

pub fn cf_betweenness_baseline(g: &Graph) -> Result<(EdgeScores, NodeScores)> {
    cf_betweenness_with_limit(g, DEFAULT_DENSE_LIMIT)
}

pub fn cf_betweenness_with_limit(g: &Graph, limit: usize) -> Result<(EdgeScores, NodeScores)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 2 nodes".into()));
    }
    if n > limit {
        return Err(Error::TooLargeForDense { n, limit });
    }
    let comps = connected_components(g);
    if comps.count() > 1 {
        return Err(Error::Disconnected {
            components: comps.count(),
            context: "the unregularised current-flow system is singular".into(),
        });
    }
    let ground = n - 1;
    let (k, lap) = kirchhoff_matrix(g, 1.0, Some(ground));
    let chol = Cholesky::factor(k, lap)?;
    // inverse columns are rows by symmetry; pad the grounded node with 0
    let inverse: Vec<Vec<f64>> = par::map_range(n, |s| {
        if s == ground {
            vec![0.0; n]
        } else {
            let mut col = chol.solve_unit(s);
            col.push(0.0);
            col
        }
    });
    let pairs = (n * (n - 1)) as f64;
    let values = par::map_slice(g.edges(), |&(v, w)| {
        let mut h: Vec<f64> = (0..n).map(|s| inverse[s][v] - inverse[s][w]).collect();
        h.sort_by(f64::total_cmp);
        // Σ_{i<j} (h_j - h_i), doubled for ordered pairs
        let unordered: f64 = h
            .iter()
            .enumerate()
            .map(|(j, x)| x * (2.0 * j as f64 - (n - 1) as f64))
            .sum();
        2.0 * unordered / pairs
    });
    let info = MeasureInfo::named("cf");
    let nodes = node_sums(g, &values);
    Ok((
        EdgeScores {
            values,
            std_err: None,
            info: info.clone(),
        },
        NodeScores {
            values: nodes,
            info,
        },
    ))
}
