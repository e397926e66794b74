//! Truncated Neumann series for rows of `C = (I - αP)^-1 D^-1`.
//!
//! With `P = D^-1 A`, row `s` of `C` is `Σ_k α^k (e_s P^k)` scaled by
//! `1/d_v` entrywise, i.e. a personalised-PageRank accumulation.

use crate::graph::Graph;
use crate::{Error, Result};

const BLOCK: usize = 8;

/// Terms `k = 0..=K` needed so that `α^K <= ε`.
pub(crate) fn iteration_count(alpha: f64, epsilon: f64) -> usize {
    ((epsilon.ln() / alpha.ln()).ceil().max(0.0)) as usize
}

/// Upper bound on the sup-norm of the discarded tail after `K` terms.
pub(crate) fn tail_bound(alpha: f64, terms: usize) -> f64 {
    alpha.powi(terms as i32 + 1) / (1.0 - alpha)
}

/// Compact adjacency shared by every block: `u32` indices halve the memory
/// traffic of the gather, which dominates the run time.
struct Adjacency {
    /// `order[i]` is the graph node stored at position `i`; a BFS order
    /// keeps neighbourhoods close in memory.
    order: Vec<usize>,
    position: Vec<usize>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    /// `α / d_v`
    weight: Vec<f64>,
    inv_deg: Vec<f64>,
}

impl Adjacency {
    fn new(g: &Graph, alpha: f64) -> Self {
        let n = g.node_count();
        assert!(n <= u32::MAX as usize, "graph too large for u32 node ids");
        let order = bfs_order(g);
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for &v in &order {
            neighbors.extend(g.neighbors(v).iter().map(|&w| position[w] as u32));
            offsets.push(neighbors.len());
        }
        let inv_deg: Vec<f64> = order.iter().map(|&v| 1.0 / g.degree(v) as f64).collect();
        Adjacency {
            order,
            position,
            offsets,
            neighbors,
            weight: inv_deg.iter().map(|x| alpha * x).collect(),
            inv_deg,
        }
    }
}

/// Breadth-first order over all components, each started from its
/// lowest-numbered node.
fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

/// When to stop summing the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Stop {
    /// Exactly this many terms beyond the identity.
    Fixed(usize),
    /// At least `min_terms`, then until the certified tail bound is at most
    /// `epsilon`; fail after `max_terms`.
    Certified {
        min_terms: usize,
        epsilon: f64,
        max_terms: usize,
    },
}

/// A finished row with the number of terms summed and a rigorous bound on
/// the sup-norm of the discarded tail.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SeriesRow {
    pub values: Vec<f64>,
    pub terms: usize,
    pub tail: f64,
}

/// Rows for up to `BLOCK` sources at once; the block shares one sweep over
/// the adjacency per term.
///
/// Works directly in the scaled form `z_k = α^k e_s P^k D^-1`, whose sum over
/// `k` is the row itself: `z_{k+1}[w] = (α / d_w) Σ_{v ~ w} z_k[v]`. Since
/// `z_{k+1} = αP z_k` entrywise and `P` is row-stochastic, everything after
/// term `k` is at most `α / (1 - α) · max z_k`. Each source stops on its own
/// bound, so a row does not depend on which other rows share its block.
fn block_rows(
    adj: &Adjacency,
    alpha: f64,
    sources: &[usize],
    stop: Stop,
) -> Result<Vec<SeriesRow>> {
    let n = adj.inv_deg.len();
    let b = sources.len();
    debug_assert!(b <= BLOCK);
    let factor = alpha / (1.0 - alpha);
    // interleaved [node][source]
    let mut z = vec![0.0; n * BLOCK];
    let mut next = vec![0.0; n * BLOCK];
    for (j, &s) in sources.iter().enumerate() {
        let p = adj.position[s];
        z[p * BLOCK + j] = adj.inv_deg[p];
    }
    let mut acc = z.clone();
    let mut done: Vec<Option<(usize, f64)>> = vec![None; b];
    let (min_terms, max_terms) = match stop {
        Stop::Fixed(k) => (k, k),
        Stop::Certified {
            min_terms,
            max_terms,
            ..
        } => (min_terms, max_terms.max(min_terms)),
    };
    let mut k = 0;
    loop {
        if k >= min_terms {
            for j in 0..b {
                if done[j].is_some() {
                    continue;
                }
                let tail = factor * (0..n).map(|p| z[p * BLOCK + j]).fold(0.0, f64::max);
                let finished = match stop {
                    Stop::Fixed(_) => true,
                    Stop::Certified { epsilon, .. } => tail <= epsilon,
                };
                if finished {
                    done[j] = Some((k, tail));
                    (0..n).for_each(|p| z[p * BLOCK + j] = 0.0);
                }
            }
            if done.iter().all(Option::is_some) {
                break;
            }
            if k >= max_terms {
                let worst = (0..b)
                    .filter(|&j| done[j].is_none())
                    .map(|j| factor * (0..n).map(|p| z[p * BLOCK + j]).fold(0.0, f64::max))
                    .fold(0.0, f64::max);
                return Err(Error::NotConverged {
                    iterations: k,
                    residual: worst,
                });
            }
        }
        for w in 0..n {
            let mut sum = [0.0; BLOCK];
            for &v in &adj.neighbors[adj.offsets[w]..adj.offsets[w + 1]] {
                let v = v as usize;
                let src = &z[v * BLOCK..v * BLOCK + BLOCK];
                for j in 0..BLOCK {
                    sum[j] += src[j];
                }
            }
            let scale = adj.weight[w];
            let out = &mut next[w * BLOCK..w * BLOCK + BLOCK];
            let total = &mut acc[w * BLOCK..w * BLOCK + BLOCK];
            for j in 0..BLOCK {
                out[j] = sum[j] * scale;
                total[j] += out[j];
            }
        }
        std::mem::swap(&mut z, &mut next);
        k += 1;
    }
    Ok(done
        .into_iter()
        .enumerate()
        .map(|(j, state)| {
            let (terms, tail) = state.expect("all sources finished");
            let mut values = vec![0.0; n];
            for (p, &v) in adj.order.iter().enumerate() {
                values[v] = acc[p * BLOCK + j];
            }
            SeriesRow {
                values,
                terms,
                tail,
            }
        })
        .collect())
}

/// Power-series rows for each source, in input order.
pub(crate) fn rows(g: &Graph, alpha: f64, sources: &[usize], stop: Stop) -> Result<Vec<SeriesRow>> {
    let adj = Adjacency::new(g, alpha);
    let blocks: Vec<&[usize]> = sources.chunks(BLOCK).collect();
    let mut out = Vec::with_capacity(sources.len());
    for block in crate::par::map_slice(&blocks, |chunk| block_rows(&adj, alpha, chunk, stop)) {
        out.extend(block?);
    }
    Ok(out)
}

/// `‖c (D - αA) - e_s‖_∞` for a computed row.
pub(crate) fn residual(g: &Graph, alpha: f64, source: usize, row: &[f64]) -> f64 {
    (0..g.node_count())
        .map(|v| {
            let mut r = g.degree(v) as f64 * row[v];
            for &w in g.neighbors(v) {
                r -= alpha * row[w];
            }
            if v == source {
                r -= 1.0;
            }
            r.abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn fixed(g: &Graph, alpha: f64, sources: &[usize], terms: usize) -> Vec<Vec<f64>> {
        rows(g, alpha, sources, Stop::Fixed(terms))
            .unwrap()
            .into_iter()
            .map(|r| r.values)
            .collect()
    }

    fn certified(min_terms: usize, epsilon: f64) -> Stop {
        Stop::Certified {
            min_terms,
            epsilon,
            max_terms: 1_000_000,
        }
    }

    #[test]
    fn iteration_count_matches_log_ratio() {
        assert_eq!(iteration_count(0.5, 1e-3), 10);
        assert_eq!(iteration_count(0.98, 1e-4), 456);
        assert_eq!(iteration_count(0.8, 1.0), 0);
    }

    #[test]
    fn k2_row_converges_to_closed_form() {
        let g = complete(2);
        let r = &fixed(&g, 0.5, &[0], 60)[0];
        assert!((r[0] - 4.0 / 3.0).abs() < 1e-15);
        assert!((r[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn block_and_single_agree() {
        let g = cycle(11);
        let all: Vec<usize> = (0..11).collect();
        let many = rows(&g, 0.7, &all, certified(5, 1e-9)).unwrap();
        for s in [0, 5, 10] {
            let one = &rows(&g, 0.7, &[s], certified(5, 1e-9)).unwrap()[0];
            assert_eq!(one, &many[s]);
        }
    }

    #[test]
    fn residual_shrinks_geometrically() {
        let g = star(5);
        let r = &fixed(&g, 0.6, &[2], 30)[0];
        assert!(residual(&g, 0.6, 2, r) <= 0.6f64.powi(31) + 1e-15);
    }

    #[test]
    fn certified_bound_holds_where_the_log_rule_falls_short() {
        // On K2 with α = 0.98 the log rule alone leaves an error of ~25 ε.
        let g = complete(2);
        let (alpha, eps) = (0.98, 1e-4);
        let exact = [1.0 / (1.0 - alpha * alpha), alpha / (1.0 - alpha * alpha)];
        let k = iteration_count(alpha, eps);
        let short = &fixed(&g, alpha, &[0], k)[0];
        assert!((short[0] - exact[0]).abs() > 10.0 * eps);
        let r = &rows(&g, alpha, &[0], certified(k, eps)).unwrap()[0];
        assert!(r.terms > k);
        assert!(r.tail <= eps);
        for (got, want) in r.values.iter().zip(exact) {
            assert!((got - want).abs() <= r.tail);
        }
    }

    #[test]
    fn hitting_the_term_cap_is_an_error() {
        let stop = Stop::Certified {
            min_terms: 3,
            epsilon: 1e-12,
            max_terms: 10,
        };
        assert!(matches!(
            rows(&path(4), 0.9, &[0], stop),
            Err(Error::NotConverged { iterations: 10, .. })
        ));
    }
}
