//! Alpha current-flow betweenness.
//!
//! For an ordered pair `(s, t)` a unit current enters at `s`, node `t` is
//! grounded, and every node also leaks to ground. The pair's score on edge
//! `(v, w)` is `|φ_v - φ_w|`. The edge score averages this over all ordered
//! pairs (exact) or over uniformly sampled pairs (sampled); a node's score
//! is the sum over its incident edges.
//!
//! In truncated mode a pair does not contribute to an edge when its source
//! is one of the edge's endpoints, and each edge is averaged over the pairs
//! that remain for it. An edge with no remaining pairs scores 0.

use std::collections::HashMap;
use std::sync::Arc;

use super::sampler::PairSampler;
use super::scores::{node_sums, EdgeScores, MeasureInfo, NodeScores};
use crate::graph::Graph;
use crate::solver::{Alpha, Method, PotentialRow, RowCache, RowSolver, SolverConfig};
use crate::{par, Error, Result};

/// Default cap on `n^2 m` for exact runs.
pub const DEFAULT_WORK_BUDGET: f64 = 5e10;

const CHUNKS: usize = 16;
const BATCH: usize = 32;

/// Which source-destination pairs a sampled run averages over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    /// `pairs` draws from [`PairSampler`] seeded with `seed`.
    Sampled { pairs: usize, seed: u64 },
    /// Every ordered pair once, in lexicographic order.
    AllPairs,
}

#[derive(Debug, Clone)]
pub struct AlphaCf {
    pub alpha: Alpha,
    pub truncated: bool,
    pub solver: SolverConfig,
    pub work_budget: f64,
    /// Memory for cached rows in sampled runs.
    pub cache_bytes: usize,
}

impl AlphaCf {
    pub fn new(alpha: Alpha) -> Self {
        AlphaCf {
            alpha,
            truncated: false,
            solver: SolverConfig::default(),
            work_budget: DEFAULT_WORK_BUDGET,
            cache_bytes: 256 << 20,
        }
    }

    pub fn truncated(mut self, yes: bool) -> Self {
        self.truncated = yes;
        self
    }

    pub fn solver(mut self, cfg: SolverConfig) -> Self {
        self.solver = cfg;
        self
    }

    fn info(&self, samples: Option<usize>, seed: Option<u64>) -> MeasureInfo {
        MeasureInfo {
            name: if self.truncated {
                "alpha_cf_tr"
            } else {
                "alpha_cf"
            }
            .to_owned(),
            alpha: Some(self.alpha.get()),
            truncated: self.truncated,
            samples,
            seed,
            epsilon: (self.solver.method != Method::Direct).then_some(self.solver.epsilon),
        }
    }

    /// Exact scores from all `n (n - 1)` ordered pairs.
    pub fn exact(&self, g: &Graph) -> Result<(EdgeScores, NodeScores)> {
        let (n, m) = (g.node_count(), g.edge_count());
        if n < 2 {
            return Err(Error::InvalidParameter("need at least 2 nodes".into()));
        }
        let work = (n as f64).powi(2) * m as f64;
        if work > self.work_budget {
            return Err(Error::ExactBudgetExceeded {
                work,
                budget: self.work_budget,
            });
        }
        let solver = RowSolver::new(g, self.alpha, &self.solver)?;
        let sources: Vec<usize> = (0..n).collect();
        let rows: Vec<Vec<f64>> = solver
            .rows(&sources)?
            .into_iter()
            .map(|r| r.values)
            .collect();

        // ratio[s n + t] = c_{s,t} / c_{t,t}; the diagonal is exactly 1, so
        // the t = s term below vanishes without a branch.
        let mut ratio = vec![0.0; n * n];
        par::fill_indexed(&mut ratio, |i| {
            let (s, t) = (i / n, i % n);
            rows[s][t] / rows[t][t]
        });

        let truncated = self.truncated;
        let values = par::map_slice(g.edges(), |&(v, w)| {
            // h[s] = c_{s,v} - c_{s,w}; drop(s, t) = h[s] - ratio[s,t] h[t]
            let h: Vec<f64> = rows.iter().map(|c| c[v] - c[w]).collect();
            let mut total = 0.0;
            for s in 0..n {
                if truncated && (s == v || s == w) {
                    continue;
                }
                let hs = h[s];
                let r = &ratio[s * n..(s + 1) * n];
                total += r
                    .iter()
                    .zip(&h)
                    .map(|(rt, ht)| (hs - rt * ht).abs())
                    .sum::<f64>();
            }
            let pairs = if truncated {
                (n - 1) * (n - 2)
            } else {
                n * (n - 1)
            };
            if pairs == 0 {
                0.0
            } else {
                total / pairs as f64
            }
        });
        let info = self.info(None, None);
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

    /// The individual pair scores `|φ_v - φ_w|` of edge `(v, w)` for every
    /// ordered pair `(s, t)`, `s != t`, in lexicographic pair order. In
    /// truncated mode pairs with `s ∈ {v, w}` are left out. Their mean is the
    /// exact edge score.
    pub fn pair_values(&self, g: &Graph, v: usize, w: usize) -> Result<Vec<f64>> {
        let n = g.node_count();
        if g.edge_id(v, w).is_none() {
            g.check_node(v)?;
            g.check_node(w)?;
            return Err(Error::NotAnEdge(v, w));
        }
        let work = (n as f64).powi(2) * g.edge_count() as f64;
        if work > self.work_budget {
            return Err(Error::ExactBudgetExceeded {
                work,
                budget: self.work_budget,
            });
        }
        let sources: Vec<usize> = (0..n).collect();
        let rows = RowSolver::new(g, self.alpha, &self.solver)?.rows(&sources)?;
        let mut out = Vec::with_capacity(n * (n - 1));
        for s in 0..n {
            if self.truncated && (s == v || s == w) {
                continue;
            }
            let cs = &rows[s].values;
            for t in (0..n).filter(|&t| t != s) {
                let ct = &rows[t].values;
                out.push(crate::solver::drop_unchecked(cs, ct, t, v, w).abs());
            }
        }
        Ok(out)
    }

    /// Monte Carlo estimate over sampled (or enumerated) pairs, with a
    /// per-edge standard error. Identical output for identical inputs,
    /// whatever the thread count.
    pub fn sampled(&self, g: &Graph, selection: PairSelection) -> Result<(EdgeScores, NodeScores)> {
        let n = g.node_count();
        let (pairs, samples, seed) = match selection {
            PairSelection::Sampled { pairs, seed } => {
                if pairs == 0 {
                    return Err(Error::InvalidParameter("need at least one pair".into()));
                }
                let drawn: Vec<_> = PairSampler::new(n, seed)?.take(pairs).collect();
                (drawn, Some(pairs), Some(seed))
            }
            PairSelection::AllPairs => {
                if n < 2 {
                    return Err(Error::InvalidParameter("need at least 2 nodes".into()));
                }
                let all: Vec<_> = (0..n)
                    .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
                    .collect();
                (all, None, None)
            }
        };
        let solver = RowSolver::new(g, self.alpha, &self.solver)?;
        let cache = RowCache::with_memory(self.cache_bytes, n);
        let (sum, sum_sq) = accumulate(&solver, &cache, &pairs, self.truncated)?;

        let total = pairs.len();
        let mut as_source = vec![0usize; n];
        for &(s, _) in &pairs {
            as_source[s] += 1;
        }
        let m = g.edge_count();
        let mut values = vec![0.0; m];
        let mut std_err = vec![0.0; m];
        for (e, &(v, w)) in g.edges().iter().enumerate() {
            let count = if self.truncated {
                total - as_source[v] - as_source[w]
            } else {
                total
            };
            if count == 0 {
                continue;
            }
            let k = count as f64;
            let mean = sum[e] / k;
            values[e] = mean;
            if count > 1 {
                let var = ((sum_sq[e] - k * mean * mean) / (k - 1.0)).max(0.0);
                std_err[e] = (var / k).sqrt();
            }
        }
        let info = self.info(samples.or(Some(total)), seed);
        let nodes = node_sums(g, &values);
        Ok((
            EdgeScores {
                values,
                std_err: Some(std_err),
                info: info.clone(),
            },
            NodeScores {
                values: nodes,
                info,
            },
        ))
    }
}

/// Per-edge sums of `x` and `x^2` over `pairs`, reduced in a fixed order.
fn accumulate(
    solver: &RowSolver<'_>,
    cache: &RowCache,
    pairs: &[(usize, usize)],
    truncated: bool,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let g = solver.graph();
    let m = g.edge_count();
    let per = pairs.len().div_ceil(CHUNKS);
    let partials = par::map_range(CHUNKS, |c| -> Result<(Vec<f64>, Vec<f64>)> {
        let lo = (c * per).min(pairs.len());
        let hi = ((c + 1) * per).min(pairs.len());
        let mut sum = vec![0.0; m];
        let mut sum_sq = vec![0.0; m];
        for batch in pairs[lo..hi].chunks(BATCH) {
            let rows = fetch_rows(solver, cache, batch)?;
            for &(s, t) in batch {
                let cs = &rows[&s].values;
                let ct = &rows[&t].values;
                let r = cs[t] / ct[t];
                for (e, &(v, w)) in g.edges().iter().enumerate() {
                    if truncated && (v == s || w == s) {
                        continue;
                    }
                    let x = ((cs[v] - cs[w]) - r * (ct[v] - ct[w])).abs();
                    sum[e] += x;
                    sum_sq[e] += x * x;
                }
            }
        }
        Ok((sum, sum_sq))
    });
    let mut sum = vec![0.0; m];
    let mut sum_sq = vec![0.0; m];
    for part in partials {
        let (s, q) = part?;
        for e in 0..m {
            sum[e] += s[e];
            sum_sq[e] += q[e];
        }
    }
    Ok((sum, sum_sq))
}

fn fetch_rows(
    solver: &RowSolver<'_>,
    cache: &RowCache,
    batch: &[(usize, usize)],
) -> Result<HashMap<usize, Arc<PotentialRow>>> {
    let mut nodes: Vec<usize> = batch.iter().flat_map(|&(s, t)| [s, t]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut rows = HashMap::with_capacity(nodes.len());
    let mut missing = Vec::new();
    for v in nodes {
        match cache.get(&solver.key(v)) {
            Some(row) => {
                rows.insert(v, row);
            }
            None => missing.push(v),
        }
    }
    for row in solver.rows(&missing)? {
        rows.insert(row.source, cache.insert(row));
    }
    Ok(rows)
}

/// Exact alpha-CF scores with a dense direct solve (power series once the
/// graph exceeds the dense size limit).
pub fn alpha_cf_exact(
    g: &Graph,
    alpha: Alpha,
    truncated: bool,
) -> Result<(EdgeScores, NodeScores)> {
    let mut cfg = SolverConfig::with_method(Method::Direct);
    if g.node_count() > cfg.dense_limit {
        cfg.method = Method::Power;
    }
    AlphaCf::new(alpha)
        .truncated(truncated)
        .solver(cfg)
        .exact(g)
}

/// Sampled alpha-CF scores over `pairs` uniformly drawn ordered pairs.
pub fn alpha_cf_sampled(
    g: &Graph,
    alpha: Alpha,
    pairs: usize,
    truncated: bool,
    seed: u64,
    cfg: &SolverConfig,
) -> Result<(EdgeScores, NodeScores)> {
    AlphaCf::new(alpha)
        .truncated(truncated)
        .solver(cfg.clone())
        .sampled(g, PairSelection::Sampled { pairs, seed })
}
