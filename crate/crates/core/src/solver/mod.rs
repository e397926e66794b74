//! Rows of `C = (D - αA)^-1` and the potentials they encode.
//!
//! `D - αA` is the Kirchhoff matrix of the graph when every edge has
//! conductance α and every node leaks to a common ground with conductance
//! `(1 - α) d_v`. For α in (0, 1) and no isolated nodes it is symmetric
//! positive definite, so each row is well defined and can be obtained three
//! ways: a dense Cholesky solve, a truncated power series, or random walks.
//!
//! Two rows, for a source `s` and a sink `t`, give the potential drop across
//! any edge when a unit current enters at `s` and `t` is grounded; see
//! [`voltage_drop`]. [`solve_kirchhoff_direct`] solves that grounded system
//! from scratch and serves as the reference.

mod cache;
mod dense;
mod montecarlo;
mod power;

use std::fmt;
use std::str::FromStr;

pub use cache::{read_row, write_row, RowCache, RowKey};
pub(crate) use dense::Cholesky;
pub(crate) use power::{iteration_count, tail_bound};

use crate::graph::Graph;
use crate::{Error, Result};

/// Default size limit for dense factorisations.
pub const DEFAULT_DENSE_LIMIT: usize = 5000;

/// Edge conductance α, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidParameter(format!(
                "alpha = {value} must lie strictly between 0 and 1"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Power,
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Power => "power",
            Method::MonteCarlo => "montecarlo",
        }
    }

    pub(crate) fn code(self) -> u64 {
        match self {
            Method::Direct => 0,
            Method::Power => 1,
            Method::MonteCarlo => 2,
        }
    }

    pub(crate) fn from_code(code: u64) -> Option<Self> {
        match code {
            0 => Some(Method::Direct),
            1 => Some(Method::Power),
            2 => Some(Method::MonteCarlo),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "direct" => Ok(Method::Direct),
            "power" => Ok(Method::Power),
            "montecarlo" | "monte-carlo" | "mc" => Ok(Method::MonteCarlo),
            other => Err(Error::InvalidParameter(format!(
                "unknown solver method `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Absolute tolerance. The power series sums at least `⌈ln ε / ln α⌉`
    /// terms and then continues until its certified tail bound is `<= ε`.
    pub epsilon: f64,
    /// Power method fails if it would need more terms than this.
    pub max_iterations: usize,
    /// Sums exactly this many power-series terms instead, without the
    /// tail check.
    pub iterations: Option<usize>,
    pub walks_per_source: u64,
    pub seed: u64,
    pub dense_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::Power,
            epsilon: 1e-8,
            max_iterations: 1_000_000,
            iterations: None,
            walks_per_source: 100_000,
            seed: 0,
            dense_limit: DEFAULT_DENSE_LIMIT,
        }
    }
}

impl SolverConfig {
    pub fn with_method(method: Method) -> Self {
        SolverConfig {
            method,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {} must be > 0",
                self.epsilon
            )));
        }
        if self.method == Method::MonteCarlo && self.walks_per_source == 0 {
            return Err(Error::InvalidParameter(
                "walks_per_source must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Minimum number of series terms beyond the identity: `⌈ln ε / ln α⌉`
    /// unless overridden.
    pub fn power_terms(&self, alpha: Alpha) -> usize {
        self.iterations
            .unwrap_or_else(|| iteration_count(alpha.get(), self.epsilon))
    }
}

/// One row `c_{s,·}` of `(D - αA)^-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialRow {
    pub source: usize,
    pub alpha: f64,
    pub method: Method,
    pub epsilon: f64,
    pub values: Vec<f64>,
    /// Error estimate: 0 for direct solves, the certified tail bound for the
    /// power method, the largest entry standard error for Monte Carlo.
    pub tolerance: f64,
    pub graph: u64,
}

impl PotentialRow {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn same_solve(&self, other: &PotentialRow) -> Result<()> {
        if self.graph != other.graph || self.values.len() != other.values.len() {
            return Err(Error::RowMismatch("rows belong to different graphs".into()));
        }
        if self.alpha != other.alpha {
            return Err(Error::RowMismatch(format!(
                "alpha {} vs {}",
                self.alpha, other.alpha
            )));
        }
        Ok(())
    }
}

fn check_solvable(g: &Graph) -> Result<()> {
    match g.isolated_node() {
        Some(v) => Err(Error::IsolatedNode(v)),
        None => Ok(()),
    }
}

/// Row-major `D - αA` restricted to the nodes other than `skip`.
pub(crate) fn kirchhoff_matrix(g: &Graph, alpha: f64, skip: Option<usize>) -> (usize, Vec<f64>) {
    let n = g.node_count();
    let index: Vec<Option<usize>> = {
        let mut next = 0;
        (0..n)
            .map(|v| {
                (Some(v) != skip).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let k = n - usize::from(skip.is_some());
    let mut m = vec![0.0; k * k];
    for v in 0..n {
        let Some(i) = index[v] else { continue };
        m[i * k + i] = g.degree(v) as f64;
        for &w in g.neighbors(v) {
            if let Some(j) = index[w] {
                m[i * k + j] = -alpha;
            }
        }
    }
    (k, m)
}

fn factor_full(g: &Graph, alpha: Alpha, limit: usize) -> Result<Cholesky> {
    let n = g.node_count();
    if n > limit {
        return Err(Error::TooLargeForDense { n, limit });
    }
    let (k, m) = kirchhoff_matrix(g, alpha.get(), None);
    Cholesky::factor(k, m)
}

/// A validated solver bound to one graph and α. The dense factorisation,
/// when used, is computed once here and shared by every row.
pub struct RowSolver<'g> {
    g: &'g Graph,
    alpha: Alpha,
    cfg: SolverConfig,
    dense: Option<Cholesky>,
    terms: usize,
}

impl<'g> RowSolver<'g> {
    pub fn new(g: &'g Graph, alpha: Alpha, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        check_solvable(g)?;
        let terms = cfg.power_terms(alpha);
        if cfg.method == Method::Power && terms > cfg.max_iterations {
            return Err(Error::NotConverged {
                iterations: cfg.max_iterations,
                residual: tail_bound(alpha.get(), cfg.max_iterations),
            });
        }
        let dense = match cfg.method {
            Method::Direct => Some(factor_full(g, alpha, cfg.dense_limit)?),
            _ => None,
        };
        Ok(RowSolver {
            g,
            alpha,
            cfg: cfg.clone(),
            dense,
            terms,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn key(&self, node: usize) -> RowKey {
        RowKey::new(
            self.g.fingerprint(),
            self.alpha.get(),
            node,
            self.cfg.method,
            self.cfg.epsilon,
        )
    }

    fn make(&self, source: usize, values: Vec<f64>, tolerance: f64) -> PotentialRow {
        PotentialRow {
            source,
            alpha: self.alpha.get(),
            method: self.cfg.method,
            epsilon: self.cfg.epsilon,
            values,
            tolerance,
            graph: self.g.fingerprint(),
        }
    }

    pub fn row(&self, s: usize) -> Result<PotentialRow> {
        Ok(self.rows(&[s])?.pop().expect("one row"))
    }

    /// Rows for `sources`, in input order.
    pub fn rows(&self, sources: &[usize]) -> Result<Vec<PotentialRow>> {
        for &s in sources {
            self.g.check_node(s)?;
        }
        let (g, a) = (self.g, self.alpha.get());
        Ok(match self.cfg.method {
            Method::Direct => {
                let chol = self.dense.as_ref().expect("factored in new");
                let values = crate::par::map_slice(sources, |&s| chol.solve_unit(s));
                sources
                    .iter()
                    .zip(values)
                    .map(|(&s, v)| self.make(s, v, 0.0))
                    .collect()
            }
            Method::Power => {
                let stop = match self.cfg.iterations {
                    Some(k) => power::Stop::Fixed(k),
                    None => power::Stop::Certified {
                        min_terms: self.terms,
                        epsilon: self.cfg.epsilon,
                        max_terms: self.cfg.max_iterations,
                    },
                };
                let series = power::rows(g, a, sources, stop)?;
                sources
                    .iter()
                    .zip(series)
                    .map(|(&s, r)| {
                        debug_assert!(
                            power::residual(g, a, s, &r.values)
                                <= a.powi(r.terms as i32 + 1) + 1e-12,
                            "power series residual above its bound"
                        );
                        self.make(s, r.values, r.tail)
                    })
                    .collect()
            }
            Method::MonteCarlo => sources
                .iter()
                .map(|&s| {
                    let r = montecarlo::row(g, a, s, self.cfg.walks_per_source, self.cfg.seed);
                    let tol = r.std_err.iter().copied().fold(0.0, f64::max);
                    self.make(s, r.values, tol)
                })
                .collect(),
        })
    }
}

/// Computes row `s` of `(D - αA)^-1` with the configured method.
pub fn solve_row(g: &Graph, alpha: Alpha, s: usize, cfg: &SolverConfig) -> Result<PotentialRow> {
    g.check_node(s)?;
    RowSolver::new(g, alpha, cfg)?.row(s)
}

/// Rows for several sources, in input order, sharing one solver setup.
pub fn solve_rows(
    g: &Graph,
    alpha: Alpha,
    sources: &[usize],
    cfg: &SolverConfig,
) -> Result<Vec<PotentialRow>> {
    for &s in sources {
        g.check_node(s)?;
    }
    RowSolver::new(g, alpha, cfg)?.rows(sources)
}

/// Standard errors of a Monte Carlo row, entry by entry.
pub fn montecarlo_row_with_errors(
    g: &Graph,
    alpha: Alpha,
    s: usize,
    walks: u64,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    g.check_node(s)?;
    check_solvable(g)?;
    if walks == 0 {
        return Err(Error::InvalidParameter("walks must be >= 1".into()));
    }
    let r = montecarlo::row(g, alpha.get(), s, walks, seed);
    Ok((r.values, r.std_err))
}

/// Potential drop `φ_v - φ_w` for unit current from `s` to grounded `t`,
/// from the rows of `s` and `t`:
///
/// `(c_{s,v} - c_{s,w}) + (c_{s,t} / c_{t,t}) (c_{t,w} - c_{t,v})`.
pub fn voltage_drop(
    g: &Graph,
    row_s: &PotentialRow,
    row_t: &PotentialRow,
    v: usize,
    w: usize,
) -> Result<f64> {
    row_s.same_solve(row_t)?;
    if row_s.graph != g.fingerprint() {
        return Err(Error::RowMismatch(
            "rows were computed on another graph".into(),
        ));
    }
    if !g.has_edge(v, w) {
        return Err(Error::NotAnEdge(v, w));
    }
    let t = row_t.source;
    let ctt = row_t.values[t];
    if ctt.is_nan() || ctt <= 0.0 {
        return Err(Error::RowMismatch(format!(
            "c[t,t] = {ctt} is not positive"
        )));
    }
    Ok(drop_unchecked(&row_s.values, &row_t.values, t, v, w))
}

#[inline]
pub(crate) fn drop_unchecked(cs: &[f64], ct: &[f64], t: usize, v: usize, w: usize) -> f64 {
    (cs[v] - cs[w]) + cs[t] / ct[t] * (ct[w] - ct[v])
}

/// Potentials of the grounded system: unit current into `s`, node `t` held
/// at 0, solved densely from `[D - αA]` with row and column `t` removed.
pub fn solve_kirchhoff_direct(g: &Graph, alpha: Alpha, s: usize, t: usize) -> Result<Vec<f64>> {
    solve_kirchhoff_with_limit(g, alpha, s, t, DEFAULT_DENSE_LIMIT)
}

pub fn solve_kirchhoff_with_limit(
    g: &Graph,
    alpha: Alpha,
    s: usize,
    t: usize,
    limit: usize,
) -> Result<Vec<f64>> {
    g.check_node(s)?;
    g.check_node(t)?;
    if s == t {
        return Err(Error::InvalidParameter(
            "source and sink must differ".into(),
        ));
    }
    check_solvable(g)?;
    grounded_potentials(g, alpha.get(), s, t, limit)
}

/// Shared by the α < 1 oracle and the α = 1 current-flow baseline.
pub(crate) fn grounded_potentials(
    g: &Graph,
    alpha: f64,
    s: usize,
    t: usize,
    limit: usize,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n > limit {
        return Err(Error::TooLargeForDense { n, limit });
    }
    let (k, m) = kirchhoff_matrix(g, alpha, Some(t));
    let chol = Cholesky::factor(k, m)?;
    let reduced = |v: usize| if v < t { v } else { v - 1 };
    let phi = chol.solve_unit(reduced(s));
    Ok((0..n)
        .map(|v| if v == t { 0.0 } else { phi[reduced(v)] })
        .collect())
}
