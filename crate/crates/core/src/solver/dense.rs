//! Dense symmetric positive-definite factorisation.

use crate::{Error, Result};

/// Lower Cholesky factor `L` of an SPD matrix, row-major.
#[derive(Debug, Clone)]
pub(crate) struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Factors the row-major `n x n` matrix `a`. Fails if a pivot is not
    /// strictly positive (matrix singular or indefinite).
    pub fn factor(n: usize, mut a: Vec<f64>) -> Result<Self> {
        debug_assert_eq!(a.len(), n * n);
        for i in 0..n {
            let (done, rest) = a.split_at_mut(i * n);
            let row_i = &mut rest[..n];
            for j in 0..i {
                let row_j = &done[j * n..j * n + j + 1];
                let dot: f64 = row_i[..j].iter().zip(&row_j[..j]).map(|(x, y)| x * y).sum();
                row_i[j] = (row_i[j] - dot) / row_j[j];
            }
            let diag = row_i[i] - row_i[..i].iter().map(|x| x * x).sum::<f64>();
            if diag.is_nan() || diag <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "matrix is not positive definite (pivot {i} = {diag:e})"
                )));
            }
            row_i[i] = diag.sqrt();
            row_i[i + 1..].fill(0.0);
        }
        Ok(Cholesky { n, l: a })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let dot: f64 = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
            y[i] = (y[i] - dot) / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            y[i] /= self.l[i * n + i];
            let yi = y[i];
            for (yk, l) in y[..i].iter_mut().zip(&self.l[i * n..i * n + i]) {
                *yk -= l * yi;
            }
        }
        y
    }

    pub fn solve_unit(&self, i: usize) -> Vec<f64> {
        let mut b = vec![0.0; self.n];
        b[i] = 1.0;
        self.solve(&b)
    }
}
