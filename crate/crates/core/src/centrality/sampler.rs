use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::seeding::stream_rng;
use crate::{Error, Result};

const PAIR_STREAM: u64 = 0x7061_6972;

/// Endless seeded stream of ordered pairs `(s, t)`, `s != t`, each drawn
/// uniformly from the `n (n - 1)` possibilities.
#[derive(Debug, Clone)]
pub struct PairSampler {
    n: usize,
    seed: u64,
    drawn: u64,
    rng: ChaCha8Rng,
}

impl PairSampler {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "pair sampling needs n >= 2, got {n}"
            )));
        }
        Ok(PairSampler {
            n,
            seed,
            drawn: 0,
            rng: stream_rng(seed, &[PAIR_STREAM], 0),
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Pairs emitted so far.
    pub fn position(&self) -> u64 {
        self.drawn
    }
}

impl Iterator for PairSampler {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        let s = self.rng.gen_range(0..self.n);
        let t = self.rng.gen_range(0..self.n - 1);
        self.drawn += 1;
        Some((s, if t >= s { t + 1 } else { t }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_distinct_endpoints() {
        let a: Vec<_> = PairSampler::new(5, 9).unwrap().take(200).collect();
        let b: Vec<_> = PairSampler::new(5, 9).unwrap().take(200).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|&(s, t)| s != t && s < 5 && t < 5));
    }

    #[test]
    fn roughly_uniform_over_ordered_pairs() {
        let n = 4;
        let draws = 120_000;
        let mut counts = vec![0usize; n * n];
        for (s, t) in PairSampler::new(n, 1).unwrap().take(draws) {
            counts[s * n + t] += 1;
        }
        let expected = draws as f64 / 12.0;
        for s in 0..n {
            for t in 0..n {
                let c = counts[s * n + t] as f64;
                if s == t {
                    assert_eq!(c, 0.0);
                } else {
                    // 5 sigma for a binomial count
                    assert!(
                        (c - expected).abs() < 5.0 * expected.sqrt(),
                        "({s},{t}) = {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn needs_two_nodes() {
        assert!(PairSampler::new(1, 0).is_err());
    }
}
