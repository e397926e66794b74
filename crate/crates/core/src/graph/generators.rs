//! Seeded random graph models. The same parameters and seed always give the
//! same edge set.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::{Error, Result};

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "probability {p} not in [0, 1]"
        )))
    }
}

/// Watts–Strogatz small world with endpoint rewiring.
///
/// Starts from a ring where every node links to its `k/2` successors, then
/// visits each lattice edge `(i, i+j)` (all `i` for `j = 1`, then `j = 2`, ...)
/// and with probability `p` moves its far end to a uniformly drawn node that
/// is neither `i` nor already adjacent to `i`. The edge count stays `nk/2`.
pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be even and >= 2"
        )));
    }
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be < n = {n}"
        )));
    }
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::with_capacity(k + 2); n];
    for i in 0..n {
        for j in 1..=k / 2 {
            let w = (i + j) % n;
            adj[i].insert(w);
            adj[w].insert(i);
        }
    }
    for j in 1..=k / 2 {
        for i in 0..n {
            if rng.gen::<f64>() >= p {
                continue;
            }
            let old = (i + j) % n;
            if !adj[i].contains(&old) || adj[i].len() >= n - 1 {
                continue;
            }
            let mut w = rng.gen_range(0..n);
            while w == i || adj[i].contains(&w) {
                w = rng.gen_range(0..n);
            }
            adj[i].remove(&old);
            adj[old].remove(&i);
            adj[i].insert(w);
            adj[w].insert(i);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(v, set)| set.iter().filter(move |&&w| v < w).map(move |&w| (v, w)));
    Ok(Graph::from_edges(n, edges)?.0)
}

/// G(n, p): every unordered pair independently with probability `p`.
///
/// Uses geometric skipping, so the cost is proportional to the number of
/// edges rather than `n^2`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut edges = Vec::new();
    if p >= 1.0 {
        for v in 0..n {
            for w in v + 1..n {
                edges.push((v, w));
            }
        }
    } else if p > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as usize, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?.0)
}

/// Barabási–Albert preferential attachment.
///
/// Seeds with a star on `m0 + 1` nodes; every later node attaches to `m0`
/// distinct existing nodes drawn proportionally to degree. The result is
/// connected with `m0 (n - m0)` edges.
pub fn barabasi_albert(n: usize, m0: usize, seed: u64) -> Result<Graph> {
    if m0 < 1 || m0 >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m0 < n, got m0 = {m0}, n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (1..=m0).map(|i| (0, i)).collect();
    // each node appears once per unit of degree
    let mut repeated: Vec<usize> = Vec::with_capacity(2 * m0 * n);
    repeated.extend(std::iter::repeat_n(0, m0));
    repeated.extend(1..=m0);
    let mut targets = Vec::with_capacity(m0);
    for source in m0 + 1..n {
        targets.clear();
        while targets.len() < m0 {
            let t = repeated[rng.gen_range(0..repeated.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, source));
        }
        repeated.extend_from_slice(&targets);
        repeated.extend(std::iter::repeat_n(source, m0));
    }
    Ok(Graph::from_edges(n, edges)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{compute_stats, connected_components};

    #[test]
    fn ws_zero_rewiring_is_ring() {
        let g = watts_strogatz(6, 2, 0.0, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2));
        assert_eq!(compute_stats(&g).unwrap().diameter, 3);
    }

    #[test]
    fn ws_full_rewiring_keeps_count() {
        let g = watts_strogatz(50, 4, 1.0, 7).unwrap();
        assert_eq!(g.edge_count(), 100);
        for &(v, w) in g.edges() {
            assert_ne!(v, w);
        }
    }

    #[test]
    fn ws_rejects_bad_k() {
        assert!(watts_strogatz(10, 3, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 10, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 0, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 4, 1.5, 0).is_err());
    }

    #[test]
    fn ws_table_size() {
        let g = watts_strogatz(1000, 12, 0.15, 42).unwrap();
        assert_eq!(g.edge_count(), 6000);
    }

    #[test]
    fn er_extremes() {
        assert_eq!(erdos_renyi(10, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(10, 1.0, 1).unwrap().edge_count(), 45);
        assert!(erdos_renyi(10, -0.1, 1).is_err());
    }

    #[test]
    fn er_density_is_plausible() {
        let g = erdos_renyi(400, 0.05, 9).unwrap();
        let expected = 0.05 * 400.0 * 399.0 / 2.0;
        let m = g.edge_count() as f64;
        // about 4 standard deviations
        assert!(
            (m - expected).abs() < 4.0 * (expected * 0.95).sqrt(),
            "m = {m}"
        );
    }

    #[test]
    fn ba_is_connected_with_expected_size() {
        let g = barabasi_albert(100, 3, 1).unwrap();
        assert_eq!(g.edge_count(), 3 * 97);
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        assert_eq!(connected_components(&g).sizes, vec![100]);
        assert!(barabasi_albert(3, 3, 1).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            watts_strogatz(200, 6, 0.3, 5).unwrap(),
            watts_strogatz(200, 6, 0.3, 5).unwrap()
        );
        assert_eq!(
            erdos_renyi(200, 0.1, 5).unwrap(),
            erdos_renyi(200, 0.1, 5).unwrap()
        );
        assert_eq!(
            barabasi_albert(200, 2, 5).unwrap(),
            barabasi_albert(200, 2, 5).unwrap()
        );
        assert_ne!(
            erdos_renyi(200, 0.1, 5).unwrap(),
            erdos_renyi(200, 0.1, 6).unwrap()
        );
    }
}
