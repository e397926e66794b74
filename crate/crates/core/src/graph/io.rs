//! Edge-list text format.
//!
//! One edge per line, two whitespace-separated labels. Lines starting with
//! `#` or `%` are comments, blank lines are skipped. A `# nodes: N` comment
//! declares the labels `0..N` up front, which is how files written by
//! [`write_edge_list`] keep isolated nodes.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use super::{BuildReport, Graph};
use crate::{Error, Result};

/// Bijection between original labels and dense node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelabelMap {
    labels: Vec<String>,
    ids: HashMap<String, usize>,
}

impl RelabelMap {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.ids.insert(label.to_owned(), id);
        id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: usize) -> Option<&str> {
        self.labels.get(id).map(String::as_str)
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.ids.get(label).copied()
    }

    /// Identity map `"0".."n-1"`.
    pub fn identity(n: usize) -> Self {
        let mut map = RelabelMap::default();
        for i in 0..n {
            map.intern(&i.to_string());
        }
        map
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub edge_lines: usize,
    pub comment_lines: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

fn declared_nodes(comment: &str) -> Option<usize> {
    let rest = comment.trim_start_matches(['#', '%']).trim();
    let value = rest.strip_prefix("nodes:")?;
    value.trim().parse().ok()
}

/// Parses edge-list text into a simple graph with densely renumbered nodes.
pub fn load_edge_list(text: &str) -> Result<(Graph, RelabelMap, LoadReport)> {
    let mut labels = RelabelMap::default();
    let mut report = LoadReport::default();
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') || line.starts_with('%') {
            report.comment_lines += 1;
            if let Some(n) = declared_nodes(line) {
                if labels.is_empty() {
                    labels = RelabelMap::identity(n);
                }
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => {
                let (a, b) = (labels.intern(a), labels.intern(b));
                pairs.push((a, b));
                report.edge_lines += 1;
            }
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!(
                        "expected two node labels, found {} token(s)",
                        line.split_whitespace().count()
                    ),
                })
            }
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyGraph("input contains no edges".into()));
    }
    let (
        graph,
        BuildReport {
            self_loops,
            duplicates,
        },
    ) = Graph::from_edges(labels.len(), pairs)?;
    report.self_loops = self_loops;
    report.duplicates = duplicates;
    Ok((graph, labels, report))
}

pub fn load_edge_list_file(path: impl AsRef<Path>) -> Result<(Graph, RelabelMap, LoadReport)> {
    let text = std::fs::read_to_string(path)?;
    load_edge_list(&text)
}

/// Writes `g` with dense ids. `header` lines are emitted as `#` comments
/// after the node/edge count lines.
pub fn write_edge_list<W: Write>(g: &Graph, header: &[String], mut out: W) -> Result<()> {
    writeln!(out, "# nodes: {}", g.node_count())?;
    writeln!(out, "# edges: {}", g.edge_count())?;
    for line in header {
        writeln!(out, "# {line}")?;
    }
    for &(v, w) in g.edges() {
        writeln!(out, "{v} {w}")?;
    }
    Ok(())
}
