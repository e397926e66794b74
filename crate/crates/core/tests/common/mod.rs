//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use alphacf::graph::{connected_components, erdos_renyi, load_edge_list_file};
use alphacf::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// First connected `G(n, p)` sample found from `seed` onwards.
pub fn connected_er(n: usize, p: f64, seed: u64) -> Graph {
    (0..10_000)
        .map(|i| erdos_renyi(n, p, seed.wrapping_mul(10_007).wrapping_add(i)).unwrap())
        .find(|g| connected_components(g).count() == 1)
        .expect("no connected sample")
}

pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap().0
}

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    from_edges(leaves + 1, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    from_edges(n, &edges)
}

/// `g` plus `count` new degree-1 nodes, each hung on a random existing node.
pub fn with_pendants(g: &Graph, count: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.node_count();
    let mut edges = g.edges().to_vec();
    for i in 0..count {
        edges.push((rng.gen_range(0..n), n + i));
    }
    from_edges(n + count, &edges)
}

/// `g` with node `v` renamed to `perm[v]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().iter().map(|&(v, w)| (perm[v], perm[w])).collect();
    from_edges(g.node_count(), &edges)
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

/// Edge and node shortest-path betweenness from explicit enumeration of
/// every shortest path, normalised by the number of ordered pairs.
pub fn brute_force_betweenness(g: &Graph) -> (Vec<f64>, Vec<f64>) {
    let n = g.node_count();
    let mut edge = vec![0.0; g.edge_count()];
    let mut node = vec![0.0; n];
    for s in 0..n {
        let dist = alphacf::graph::bfs_distances(g, s).unwrap();
        for t in 0..n {
            let Some(dt) = dist[t] else { continue };
            if t == s {
                continue;
            }
            let mut paths = Vec::new();
            let mut current = vec![s];
            extend_paths(g, &dist, t, dt, &mut current, &mut paths);
            let share = 1.0 / paths.len() as f64;
            for p in &paths {
                for pair in p.windows(2) {
                    edge[g.edge_id(pair[0], pair[1]).unwrap()] += share;
                }
                for &v in &p[1..p.len() - 1] {
                    node[v] += share;
                }
            }
        }
    }
    let norm = (n * (n - 1)) as f64;
    edge.iter_mut()
        .chain(node.iter_mut())
        .for_each(|x| *x /= norm);
    (edge, node)
}

fn extend_paths(
    g: &Graph,
    dist: &[Option<usize>],
    t: usize,
    dt: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *current.last().unwrap();
    if v == t {
        out.push(current.clone());
        return;
    }
    let dv = current.len() - 1;
    for &w in g.neighbors(v) {
        if dist[w] == Some(dv + 1) && dv < dt {
            current.push(w);
            extend_paths(g, dist, t, dt, current, out);
            current.pop();
        }
    }
}

/// Location of the Dolphin social network edge list: `ALPHACF_DOLPHINS`,
/// else `tests/data/dolphins.txt` in this crate.
pub fn dolphins_path() -> PathBuf {
    std::env::var_os("ALPHACF_DOLPHINS")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/dolphins.txt")
        })
}

/// The Dolphin network, checked against its known size (62 nodes, 159 edges).
pub fn dolphins() -> Result<Graph, String> {
    let path = dolphins_path();
    if !path.exists() {
        return Err(format!(
            "dataset missing: {} (set ALPHACF_DOLPHINS to an edge list of the Dolphin network)",
            path.display()
        ));
    }
    let (g, _, _) = load_edge_list_file(&path).map_err(|e| e.to_string())?;
    if (g.node_count(), g.edge_count()) != (62, 159) {
        return Err(format!(
            "{} has n={}, m={}; expected the Dolphin network (62, 159)",
            path.display(),
            g.node_count(),
            g.edge_count()
        ));
    }
    Ok(g)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    cov / var
}

/// Mean of the finite, positive entries.
pub fn mean_positive(values: &[f64]) -> f64 {
    let kept: Vec<f64> = values.iter().copied().filter(|x| *x > 0.0).collect();
    kept.iter().sum::<f64>() / kept.len() as f64
}

pub fn edge_map(g: &Graph, values: &[f64]) -> HashMap<(usize, usize), f64> {
    g.edges()
        .iter()
        .copied()
        .zip(values.iter().copied())
        .collect()
}
