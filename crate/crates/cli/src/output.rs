//! Output files and the run-configuration header written at their top.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::ScoreOpts;

/// `key: value` lines echoing everything that determines a run's output.
/// No timestamps, so identical runs give identical files.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    entries: Vec<(String, String)>,
}

impl RunConfig {
    pub fn new(command: &str, input: Option<&Path>) -> Self {
        let mut cfg = RunConfig::default();
        cfg.set("tool", format!("alphacf {}", env!("CARGO_PKG_VERSION")));
        cfg.set("command", command);
        if let Some(p) = input {
            cfg.set("input", p.display());
        }
        cfg
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_owned(), value.to_string()));
        self
    }

    /// Sampling and solver settings, for outputs that do not carry their
    /// own measure header.
    pub fn scores(&mut self, opts: &ScoreOpts) -> &mut Self {
        match opts.pairs {
            Some(n) => self.set("pairs", n).set("seed", opts.seed),
            None => self.set("pairs", "exact"),
        };
        self.solver(opts)
    }

    /// Solver settings only.
    pub fn solver(&mut self, opts: &ScoreOpts) -> &mut Self {
        let method = crate::measure::solver_config(opts, opts.pairs.is_some()).method;
        self.set("method", method);
        match method {
            alphacf::Method::Power => self.set("epsilon", format!("{:e}", opts.epsilon)),
            alphacf::Method::MonteCarlo => {
                self.set("walks", opts.walks).set("walk_seed", opts.seed)
            }
            alphacf::Method::Direct => self,
        }
    }

    pub fn lines(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect()
    }
}

pub fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

/// A buffered writer for `path`, or stdout when there is none.
pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                create_dir(dir)?;
            }
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// A file name made from a measure name: `alpha_cf(0.8)` → `alpha_cf_0.8`.
pub fn file_stem(measure: &str) -> String {
    let mut stem = String::with_capacity(measure.len());
    for c in measure.chars() {
        match c {
            '(' | ',' | ' ' => {
                if !stem.ends_with('_') {
                    stem.push('_');
                }
            }
            ')' => {}
            c => stem.push(c),
        }
    }
    stem
}

pub fn in_dir(dir: &Path, name: String) -> PathBuf {
    dir.join(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_are_file_friendly() {
        assert_eq!(file_stem("alpha_cf(0.98)"), "alpha_cf_0.98");
        assert_eq!(file_stem("alpha_cf_tr(0.8)"), "alpha_cf_tr_0.8");
        assert_eq!(file_stem("degree"), "degree");
    }
}
