use std::io::Write;

use crate::Result;

/// Empirical complementary distribution: for each distinct value `x`, the
/// number of items strictly greater than `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ccdf {
    sorted: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Ccdf {
    pub fn total(&self) -> usize {
        self.sorted.len()
    }

    /// Items with value `> x`, for any `x`.
    pub fn count_above(&self, x: f64) -> usize {
        self.sorted.len() - self.sorted.partition_point(|&v| v <= x)
    }

    pub fn write_csv<W: Write>(&self, header: &[String], mut out: W) -> Result<()> {
        for line in header {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "x,count_above")?;
        for (x, c) in self.thresholds.iter().zip(&self.counts) {
            writeln!(out, "{x:.12e},{c}")?;
        }
        Ok(())
    }
}

/// NaNs are dropped.
pub fn ccdf(values: &[f64]) -> Ccdf {
    let mut sorted: Vec<f64> = values.iter().copied().filter(|x| !x.is_nan()).collect();
    sorted.sort_by(f64::total_cmp);
    let mut thresholds = Vec::new();
    let mut counts = Vec::new();
    let n = sorted.len();
    let mut i = 0;
    while i < n {
        let x = sorted[i];
        let mut j = i;
        while j < n && sorted[j] == x {
            j += 1;
        }
        thresholds.push(x);
        counts.push(n - j);
        i = j;
    }
    Ccdf {
        sorted,
        thresholds,
        counts,
    }
}
