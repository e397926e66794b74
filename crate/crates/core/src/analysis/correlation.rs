use std::fmt;
use std::io::Write;
use std::str::FromStr;

use super::kendall::kendall_tau;
use crate::centrality::{
    cf_betweenness_baseline, closeness, degree_centrality, pagerank, shortest_path_betweenness,
    AlphaCf, NodeScores, PairSelection,
};
use crate::graph::Graph;
use crate::solver::{Alpha, Method, SolverConfig};
use crate::{Error, Result};

/// A node centrality that can appear in a correlation table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    Degree,
    PageRank,
    Closeness,
    Betweenness,
    CurrentFlow,
    AlphaCf { alpha: f64, truncated: bool },
}

impl Measure {
    /// The eight columns of the usual comparison table.
    pub fn standard_set() -> Vec<Measure> {
        vec![
            Measure::Degree,
            Measure::PageRank,
            Measure::Closeness,
            Measure::Betweenness,
            Measure::CurrentFlow,
            Measure::AlphaCf {
                alpha: 0.8,
                truncated: false,
            },
            Measure::AlphaCf {
                alpha: 0.8,
                truncated: true,
            },
            Measure::AlphaCf {
                alpha: 0.98,
                truncated: false,
            },
        ]
    }

    pub fn compute(&self, g: &Graph, params: &MeasureParams) -> Result<NodeScores> {
        Ok(match *self {
            Measure::Degree => degree_centrality(g),
            Measure::PageRank => pagerank(g, params.pagerank_damping, params.pagerank_epsilon),
            Measure::Closeness => closeness(g),
            Measure::Betweenness => shortest_path_betweenness(g).1,
            Measure::CurrentFlow => cf_betweenness_baseline(g)?.1,
            Measure::AlphaCf { alpha, truncated } => {
                let acf = AlphaCf::new(Alpha::new(alpha)?)
                    .truncated(truncated)
                    .solver(params.solver.clone());
                let mut scores = match params.alpha_cf {
                    AlphaCfMode::Exact => {
                        let mut exact = acf;
                        if exact.solver.method == Method::Direct
                            && g.node_count() > exact.solver.dense_limit
                        {
                            exact.solver.method = Method::Power;
                        }
                        exact.exact(g)?.1
                    }
                    AlphaCfMode::Sampled { pairs, seed } => {
                        acf.sampled(g, PairSelection::Sampled { pairs, seed })?.1
                    }
                };
                scores.info.name = self.to_string();
                scores
            }
        })
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Degree => f.write_str("degree"),
            Measure::PageRank => f.write_str("pagerank"),
            Measure::Closeness => f.write_str("closeness"),
            Measure::Betweenness => f.write_str("betweenness"),
            Measure::CurrentFlow => f.write_str("cf"),
            Measure::AlphaCf {
                alpha,
                truncated: false,
            } => write!(f, "alpha_cf({alpha})"),
            Measure::AlphaCf {
                alpha,
                truncated: true,
            } => write!(f, "alpha_cf_tr({alpha})"),
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    /// Accepts the display names plus `alpha_cf:0.9` style; a bare
    /// `alpha_cf` means α = 0.98 and a bare `alpha_cf_tr` α = 0.8.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (head, arg) = match lower.find(['(', ':']) {
            Some(i) => (
                &lower[..i],
                Some(lower[i + 1..].trim_end_matches(')').trim().to_owned()),
            ),
            None => (lower.as_str(), None),
        };
        let alpha = |default: f64| -> Result<f64> {
            match &arg {
                None => Ok(default),
                Some(a) => a
                    .parse::<f64>()
                    .map_err(|_| Error::UnknownMeasure(s.to_owned()))
                    .and_then(|v| Alpha::new(v).map(Alpha::get)),
            }
        };
        let plain = |m: Measure| {
            if arg.is_some() {
                Err(Error::UnknownMeasure(s.to_owned()))
            } else {
                Ok(m)
            }
        };
        match head {
            "degree" => plain(Measure::Degree),
            "pagerank" | "pr" => plain(Measure::PageRank),
            "closeness" => plain(Measure::Closeness),
            "betweenness" | "sp" => plain(Measure::Betweenness),
            "cf" | "current_flow" => plain(Measure::CurrentFlow),
            "alpha_cf" | "acf" => Ok(Measure::AlphaCf {
                alpha: alpha(0.98)?,
                truncated: false,
            }),
            "alpha_cf_tr" | "acf_tr" => Ok(Measure::AlphaCf {
                alpha: alpha(0.8)?,
                truncated: true,
            }),
            _ => Err(Error::UnknownMeasure(s.to_owned())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaCfMode {
    Exact,
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct MeasureParams {
    pub pagerank_damping: f64,
    pub pagerank_epsilon: f64,
    pub alpha_cf: AlphaCfMode,
    pub solver: SolverConfig,
}

impl Default for MeasureParams {
    fn default() -> Self {
        MeasureParams {
            pagerank_damping: 0.85,
            pagerank_epsilon: 1e-12,
            alpha_cf: AlphaCfMode::Exact,
            solver: SolverConfig::with_method(Method::Direct),
        }
    }
}

/// Symmetric Kendall tau-b matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub names: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn from_scores(scores: &[NodeScores], names: Vec<String>) -> Result<Self> {
        let k = scores.len();
        let mut values = vec![vec![1.0; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let tau = kendall_tau(&scores[i], &scores[j])?;
                values[i][j] = tau;
                values[j][i] = tau;
            }
        }
        Ok(CorrelationMatrix { names, values })
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        Some(self.values[i][j])
    }

    pub fn write_csv<W: Write>(&self, header: &[String], mut out: W) -> Result<()> {
        for line in header {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "measure,{}", self.names.join(","))?;
        for (name, row) in self.names.iter().zip(&self.values) {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.3}")).collect();
            writeln!(out, "{name},{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Computes every measure on `g` and their pairwise Kendall taus.
pub fn correlation_table(
    g: &Graph,
    measures: &[Measure],
    params: &MeasureParams,
) -> Result<CorrelationMatrix> {
    let scores = measures
        .iter()
        .map(|m| m.compute(g, params))
        .collect::<Result<Vec<_>>>()?;
    CorrelationMatrix::from_scores(&scores, measures.iter().map(ToString::to_string).collect())
}
