use std::fmt;
use std::io::Write;

use crate::graph::{Graph, RelabelMap};
use crate::Result;

/// Describes how a score vector was produced; written as CSV header
/// comments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MeasureInfo {
    pub name: String,
    pub alpha: Option<f64>,
    pub truncated: bool,
    /// Number of sampled pairs; `None` for exact computations.
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
}

impl MeasureInfo {
    pub fn named(name: &str) -> Self {
        MeasureInfo {
            name: name.to_owned(),
            ..Default::default()
        }
    }

    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("measure: {}", self.name)];
        if let Some(a) = self.alpha {
            lines.push(format!("alpha: {a}"));
            lines.push(format!("truncated: {}", self.truncated));
        }
        lines.push(match self.samples {
            Some(n) => format!("pairs: {n}"),
            None => "pairs: exact".to_owned(),
        });
        if let Some(seed) = self.seed {
            lines.push(format!("seed: {seed}"));
        }
        if let Some(eps) = self.epsilon {
            lines.push(format!("epsilon: {eps:e}"));
        }
        lines
    }
}

impl fmt::Display for MeasureInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if let Some(a) = self.alpha {
            write!(
                f,
                "({a}{})",
                if self.truncated { ", truncated" } else { "" }
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeScores {
    /// One value per edge id.
    pub values: Vec<f64>,
    /// Per-edge standard error, sampled estimates only.
    pub std_err: Option<Vec<f64>>,
    pub info: MeasureInfo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeScores {
    pub values: Vec<f64>,
    pub info: MeasureInfo,
}

impl NodeScores {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Node ids by descending score, ties by ascending id.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]).then(a.cmp(&b)));
        order
    }

    pub fn write_csv<W: Write>(&self, extra_header: &[String], out: W) -> Result<()> {
        self.write_labeled_csv(None, extra_header, out)
    }

    /// Like [`NodeScores::write_csv`], naming nodes by their input labels.
    pub fn write_labeled_csv<W: Write>(
        &self,
        labels: Option<&RelabelMap>,
        extra_header: &[String],
        mut out: W,
    ) -> Result<()> {
        for line in extra_header.iter().chain(&self.info.header_lines()) {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "node,score")?;
        for (v, s) in self.values.iter().enumerate() {
            writeln!(out, "{},{s:.12e}", Label(labels, v))?;
        }
        Ok(())
    }
}

impl EdgeScores {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn write_csv<W: Write>(&self, g: &Graph, extra_header: &[String], out: W) -> Result<()> {
        self.write_labeled_csv(g, None, extra_header, out)
    }

    /// Like [`EdgeScores::write_csv`], naming nodes by their input labels.
    pub fn write_labeled_csv<W: Write>(
        &self,
        g: &Graph,
        labels: Option<&RelabelMap>,
        extra_header: &[String],
        mut out: W,
    ) -> Result<()> {
        for line in extra_header.iter().chain(&self.info.header_lines()) {
            writeln!(out, "# {line}")?;
        }
        match &self.std_err {
            Some(se) => {
                writeln!(out, "u,v,score,stderr")?;
                for ((&(u, v), s), e) in g.edges().iter().zip(&self.values).zip(se) {
                    let (u, v) = (Label(labels, u), Label(labels, v));
                    writeln!(out, "{u},{v},{s:.12e},{e:.6e}")?;
                }
            }
            None => {
                writeln!(out, "u,v,score")?;
                for (&(u, v), s) in g.edges().iter().zip(&self.values) {
                    let (u, v) = (Label(labels, u), Label(labels, v));
                    writeln!(out, "{u},{v},{s:.12e}")?;
                }
            }
        }
        Ok(())
    }
}

/// A node written by its input label when one is known, else by its id.
struct Label<'a>(Option<&'a RelabelMap>, usize);

impl fmt::Display for Label<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.and_then(|m| m.label(self.1)) {
            Some(label) => f.write_str(label),
            None => write!(f, "{}", self.1),
        }
    }
}

/// Sum of incident edge values for every node, in a fixed order.
pub fn node_sums(g: &Graph, edge_values: &[f64]) -> Vec<f64> {
    (0..g.node_count())
        .map(|v| g.incident(v).map(|(_, e)| edge_values[e]).sum())
        .collect()
}
