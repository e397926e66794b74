#![allow(clippy::needless_range_loop)]

//! Structural properties of potentials and centrality scores on seeded
//! random graphs.

mod common;

use alphacf::centrality::{
    alpha_cf_exact, cf_betweenness_baseline, degree_centrality, pagerank,
    shortest_path_betweenness, AlphaCf, PairSelection,
};
use alphacf::graph::{barabasi_albert, watts_strogatz};
use alphacf::solver::{
    montecarlo_row_with_errors, solve_kirchhoff_direct, solve_rows, voltage_drop,
};
use alphacf::{Alpha, Graph, Method, SolverConfig};
use approx::assert_relative_eq;
use common::*;
use proptest::prelude::*;

fn alpha(a: f64) -> Alpha {
    Alpha::new(a).unwrap()
}

fn all_rows(g: &Graph, a: f64, method: Method) -> Vec<Vec<f64>> {
    let sources: Vec<usize> = (0..g.node_count()).collect();
    let mut cfg = SolverConfig::with_method(method);
    cfg.epsilon = 1e-13;
    solve_rows(g, alpha(a), &sources, &cfg)
        .unwrap()
        .into_iter()
        .map(|r| r.values)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn row_drop_matches_grounded_solve(n in 4usize..18, seed in 0u64..1000, a in 0.05f64..0.99) {
        let g = connected_er(n, 0.35, seed);
        let cfg = SolverConfig::with_method(Method::Direct);
        let sources: Vec<usize> = (0..n).collect();
        let rows = solve_rows(&g, alpha(a), &sources, &cfg).unwrap();
        for s in 0..n {
            for t in (0..n).filter(|&t| t != s) {
                let phi = solve_kirchhoff_direct(&g, alpha(a), s, t).unwrap();
                for &(v, w) in g.edges() {
                    let drop = voltage_drop(&g, &rows[s], &rows[t], v, w).unwrap();
                    prop_assert!((drop - (phi[v] - phi[w])).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn potential_matrix_is_symmetric_and_positive(n in 3usize..30, seed in 0u64..1000, a in 0.05f64..0.99) {
        let g = connected_er(n, 0.3, seed);
        let c = all_rows(&g, a, Method::Direct);
        for s in 0..n {
            for t in 0..n {
                prop_assert!(c[s][t] > 0.0);
                prop_assert!((c[s][t] - c[t][s]).abs() <= 1e-12 * c[s][s].max(1.0));
            }
        }
    }

    #[test]
    fn edge_currents_stay_below_one(n in 3usize..25, seed in 0u64..1000, a in 0.05f64..0.99) {
        let g = connected_er(n, 0.3, seed);
        for truncated in [false, true] {
            let (edges, _) = alpha_cf_exact(&g, alpha(a), truncated).unwrap();
            for &x in &edges.values {
                prop_assert!(x >= 0.0);
                prop_assert!(a * x <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn node_scores_sum_to_twice_edge_scores(n in 3usize..25, seed in 0u64..1000) {
        let g = connected_er(n, 0.3, seed);
        let (edges, nodes) = alpha_cf_exact(&g, alpha(0.8), false).unwrap();
        let e: f64 = edges.values.iter().sum();
        let v: f64 = nodes.values.iter().sum();
        prop_assert!((v - 2.0 * e).abs() < 1e-10 * v.max(1.0));
        let degrees: f64 = degree_centrality(&g).values.iter().sum();
        prop_assert_eq!(degrees as usize, 2 * g.edge_count());
    }

    #[test]
    fn scores_follow_relabelling(n in 3usize..20, seed in 0u64..1000) {
        let g = connected_er(n, 0.3, seed);
        let perm = random_permutation(n, seed ^ 0xabc);
        let h = relabel(&g, &perm);
        let check = |a: &[f64], b: &[f64]| {
            let ea = edge_map(&g, a);
            let eb = edge_map(&h, b);
            ea.iter().all(|(&(v, w), &x)| {
                let key = (perm[v].min(perm[w]), perm[v].max(perm[w]));
                (eb[&key] - x).abs() < 1e-10
            })
        };
        for truncated in [false, true] {
            let a = alpha_cf_exact(&g, alpha(0.9), truncated).unwrap().0;
            let b = alpha_cf_exact(&h, alpha(0.9), truncated).unwrap().0;
            prop_assert!(check(&a.values, &b.values));
        }
        let a = shortest_path_betweenness(&g).0;
        let b = shortest_path_betweenness(&h).0;
        prop_assert!(check(&a.values, &b.values));
        let a = cf_betweenness_baseline(&g).unwrap().0;
        let b = cf_betweenness_baseline(&h).unwrap().0;
        prop_assert!(check(&a.values, &b.values));
    }

    #[test]
    fn all_pair_enumeration_equals_exact(n in 3usize..20, seed in 0u64..1000, truncated: bool) {
        let g = connected_er(n, 0.3, seed);
        let acf = AlphaCf::new(alpha(0.8))
            .truncated(truncated)
            .solver(SolverConfig::with_method(Method::Direct));
        let exact = acf.exact(&g).unwrap().0;
        let enumerated = acf.sampled(&g, PairSelection::AllPairs).unwrap().0;
        for (x, y) in exact.values.iter().zip(&enumerated.values) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn pagerank_is_a_column_average_of_potentials() {
    // π_v = (1 - α)/n · d_v · Σ_s c_{s,v}
    for seed in 0..5 {
        let g = barabasi_albert(60, 2, seed).unwrap();
        let n = g.node_count();
        let a = 0.85;
        let c = all_rows(&g, a, Method::Direct);
        let pr = pagerank(&g, a, 1e-15);
        for v in 0..n {
            let column: f64 = (0..n).map(|s| c[s][v]).sum();
            let expected = (1.0 - a) / n as f64 * g.degree(v) as f64 * column;
            assert_relative_eq!(pr.values[v], expected, max_relative = 1e-9);
        }
    }
}

#[test]
fn solvers_agree_on_small_graphs() {
    let graphs = [
        connected_er(30, 0.2, 1),
        watts_strogatz(40, 4, 0.2, 2).unwrap(),
        barabasi_albert(50, 2, 3).unwrap(),
        star(12),
    ];
    for g in &graphs {
        for a in [0.3, 0.8, 0.95] {
            let direct = all_rows(g, a, Method::Direct);
            let power = all_rows(g, a, Method::Power);
            for (d, p) in direct.iter().zip(&power) {
                for (x, y) in d.iter().zip(p) {
                    assert!((x - y).abs() < 1e-12, "{x} vs {y}");
                }
            }
        }
    }
}

#[test]
fn montecarlo_rows_within_five_standard_errors() {
    let g = connected_er(25, 0.2, 7);
    for a in [0.5, 0.9] {
        let direct = all_rows(&g, a, Method::Direct);
        for s in [0, 11, 24] {
            let (values, se) = montecarlo_row_with_errors(&g, alpha(a), s, 200_000, 99).unwrap();
            let tol = se.iter().copied().fold(0.0, f64::max);
            for v in 0..25 {
                assert!(
                    (values[v] - direct[s][v]).abs() <= 5.0 * tol,
                    "s={s} v={v}: {} vs {} (se {tol})",
                    values[v],
                    direct[s][v]
                );
            }
        }
    }
}

#[test]
fn pendant_potential_is_alpha_times_neighbour() {
    let g = with_pendants(&connected_er(20, 0.25, 5), 6, 5);
    let n = g.node_count();
    for a in [0.3, 0.8, 0.98] {
        for v in (0..n).filter(|&v| g.degree(v) == 1) {
            let u = g.neighbors(v)[0];
            for s in (0..n).filter(|&s| s != v) {
                for t in (0..n).filter(|&t| t != v && t != s) {
                    let phi = solve_kirchhoff_direct(&g, alpha(a), s, t).unwrap();
                    assert!((phi[v] - a * phi[u]).abs() < 1e-12 * phi[u].abs().max(1.0));
                }
            }
        }
    }
}

#[test]
fn truncation_lowers_pendant_edges() {
    for seed in 0..5 {
        let g = with_pendants(&connected_er(15, 0.3, seed), 3, seed);
        let plain = alpha_cf_exact(&g, alpha(0.8), false).unwrap().0;
        let truncated = alpha_cf_exact(&g, alpha(0.8), true).unwrap().0;
        for (e, &(v, w)) in g.edges().iter().enumerate() {
            if g.degree(v) == 1 || g.degree(w) == 1 {
                assert!(truncated.values[e] < plain.values[e]);
            }
        }
    }
}

#[test]
fn repeated_runs_are_identical_across_thread_counts() {
    let g = barabasi_albert(200, 3, 4).unwrap();
    let run = || {
        let exact = alpha_cf_exact(&g, alpha(0.8), false).unwrap().0;
        let sampled = AlphaCf::new(alpha(0.9))
            .sampled(
                &g,
                PairSelection::Sampled {
                    pairs: 300,
                    seed: 5,
                },
            )
            .unwrap()
            .0;
        let sp = shortest_path_betweenness(&g).0;
        (exact, sampled, sp)
    };
    let reference = run();
    assert_eq!(run(), reference);
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        assert_eq!(pool.install(run), reference);
    }
}

#[test]
fn shortest_path_betweenness_matches_enumeration() {
    for seed in 0..20 {
        let g = alphacf::graph::erdos_renyi(12, 0.3, seed).unwrap();
        let (edge, node) = shortest_path_betweenness(&g);
        let (be, bn) = brute_force_betweenness(&g);
        for (x, y) in edge
            .values
            .iter()
            .zip(&be)
            .chain(node.values.iter().zip(&bn))
        {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn current_flow_is_the_alpha_to_one_limit() {
    let g = connected_er(20, 0.25, 3);
    let cf = cf_betweenness_baseline(&g).unwrap().0;
    let near = alpha_cf_exact(&g, alpha(1.0 - 1e-7), false).unwrap().0;
    for (x, y) in cf.values.iter().zip(&near.values) {
        assert!((x - y).abs() < 1e-4 * x.max(1e-3), "{x} vs {y}");
    }
}
