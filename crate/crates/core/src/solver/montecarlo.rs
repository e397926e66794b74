//! Monte Carlo rows: walks from the source that survive each step with
//! probability α. Every visit counts, so the expected number of visits to
//! `v` is `Σ_k α^k (P^k)_{s,v}`, and dividing by `d_v` gives `c_{s,v}`.

use rand::Rng;

use crate::graph::Graph;
use crate::par;
use crate::seeding::stream_rng;

// fixed chunking keeps the integer sums independent of thread count
const CHUNKS: usize = 16;

pub(crate) struct McRow {
    pub values: Vec<f64>,
    pub std_err: Vec<f64>,
}

struct Tally {
    sum: Vec<u64>,
    sum_sq: Vec<u64>,
}

fn run_chunk(
    g: &Graph,
    alpha: f64,
    source: usize,
    seed: u64,
    walkers: std::ops::Range<u64>,
) -> Tally {
    let n = g.node_count();
    let mut tally = Tally {
        sum: vec![0; n],
        sum_sq: vec![0; n],
    };
    let mut visits = vec![0u64; n];
    let mut touched = Vec::new();
    for walker in walkers {
        let mut rng = stream_rng(seed, &[source as u64], walker);
        let mut v = source;
        loop {
            if visits[v] == 0 {
                touched.push(v);
            }
            visits[v] += 1;
            if rng.gen::<f64>() >= alpha {
                break;
            }
            let nb = g.neighbors(v);
            v = nb[rng.gen_range(0..nb.len())];
        }
        for &u in &touched {
            let c = visits[u];
            tally.sum[u] += c;
            tally.sum_sq[u] += c * c;
            visits[u] = 0;
        }
        touched.clear();
    }
    tally
}

pub(crate) fn row(g: &Graph, alpha: f64, source: usize, walks: u64, seed: u64) -> McRow {
    let n = g.node_count();
    let per = walks.div_ceil(CHUNKS as u64);
    let tallies = par::map_range(CHUNKS, |c| {
        let lo = (c as u64 * per).min(walks);
        let hi = ((c as u64 + 1) * per).min(walks);
        run_chunk(g, alpha, source, seed, lo..hi)
    });
    let mut sum = vec![0u64; n];
    let mut sum_sq = vec![0u64; n];
    for t in &tallies {
        for v in 0..n {
            sum[v] += t.sum[v];
            sum_sq[v] += t.sum_sq[v];
        }
    }
    let w = walks as f64;
    let mut values = vec![0.0; n];
    let mut std_err = vec![0.0; n];
    for v in 0..n {
        let d = g.degree(v) as f64;
        let mean = sum[v] as f64 / w;
        values[v] = mean / d;
        if walks > 1 {
            let var = ((sum_sq[v] as f64 - w * mean * mean) / (w - 1.0)).max(0.0);
            std_err[v] = (var / w).sqrt() / d;
        }
    }
    McRow { values, std_err }
}
