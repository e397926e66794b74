//! Turns measure names and score options into computed scores.

use alphacf::analysis::{AlphaCfMode, Measure, MeasureParams};
use alphacf::centrality::{
    cf_betweenness_baseline, shortest_path_betweenness, AlphaCf, EdgeScores, NodeScores,
    PairSelection,
};
use alphacf::graph::connected_components;
use alphacf::{Alpha, Graph, Method, SolverConfig};
use anyhow::Result;

use crate::{ScoreOpts, UsageError};

/// Parses a measure name, applying `--alpha` and `--truncated` to α-CF.
/// An α written into the name (`alpha_cf:0.9`) takes precedence.
pub fn resolve(name: &str, opts: &ScoreOpts) -> Result<Measure> {
    let measure: Measure = name.parse()?;
    Ok(match measure {
        Measure::AlphaCf { alpha, truncated } => {
            let explicit = name.contains([':', '(']);
            let truncated = truncated || opts.truncated;
            let alpha = match (explicit, opts.alpha) {
                (true, _) => alpha,
                (false, Some(a)) => Alpha::new(a)?.get(),
                (false, None) if truncated => 0.8,
                (false, None) => 0.98,
            };
            Measure::AlphaCf { alpha, truncated }
        }
        other => other,
    })
}

pub fn resolve_all(names: &[String], opts: &ScoreOpts) -> Result<Vec<Measure>> {
    if names.is_empty() {
        return Ok(Measure::standard_set());
    }
    names.iter().map(|n| resolve(n.trim(), opts)).collect()
}

fn sampled(opts: &ScoreOpts) -> Result<Option<(usize, u64)>> {
    match opts.pairs {
        Some(0) => Err(UsageError("--pairs must be at least 1".into()).into()),
        Some(n) => Ok(Some((n, opts.seed))),
        None => Ok(None),
    }
}

pub fn solver_config(opts: &ScoreOpts, sampled: bool) -> SolverConfig {
    let default = if sampled {
        Method::Power
    } else {
        Method::Direct
    };
    let mut cfg = SolverConfig::with_method(opts.method.unwrap_or(default));
    cfg.epsilon = opts.epsilon;
    cfg.walks_per_source = opts.walks;
    cfg.seed = opts.seed;
    cfg
}

pub fn params(opts: &ScoreOpts) -> Result<MeasureParams> {
    let pairs = sampled(opts)?;
    Ok(MeasureParams {
        alpha_cf: match pairs {
            Some((pairs, seed)) => AlphaCfMode::Sampled { pairs, seed },
            None => AlphaCfMode::Exact,
        },
        solver: solver_config(opts, pairs.is_some()),
        ..MeasureParams::default()
    })
}

pub fn alpha_cf(alpha: f64, truncated: bool, opts: &ScoreOpts) -> Result<AlphaCf> {
    let sampled = sampled(opts)?.is_some();
    Ok(AlphaCf::new(Alpha::new(alpha)?)
        .truncated(truncated)
        .solver(solver_config(opts, sampled)))
}

/// Node scores, plus edge scores for the edge-based measures.
pub fn compute(
    g: &Graph,
    measure: &Measure,
    opts: &ScoreOpts,
) -> Result<(Option<EdgeScores>, NodeScores)> {
    Ok(match *measure {
        Measure::Betweenness => {
            let (e, v) = shortest_path_betweenness(g);
            (Some(e), v)
        }
        Measure::CurrentFlow => {
            let (e, v) = cf_betweenness_baseline(g)?;
            (Some(e), v)
        }
        Measure::AlphaCf { alpha, truncated } => {
            let acf = alpha_cf(alpha, truncated, opts)?;
            let (mut e, mut v) = match sampled(opts)? {
                Some((pairs, seed)) => acf.sampled(g, PairSelection::Sampled { pairs, seed })?,
                None => {
                    let mut acf = acf;
                    if acf.solver.method == Method::Direct
                        && g.node_count() > acf.solver.dense_limit
                    {
                        acf.solver.method = Method::Power;
                    }
                    acf.exact(g)?
                }
            };
            e.info.name = measure.to_string();
            v.info.name = measure.to_string();
            (Some(e), v)
        }
        _ => (None, measure.compute(g, &params(opts)?)?),
    })
}

/// Scores of `measure` on the largest component of `g`; every other node
/// ranks below all of them. Used when recomputing rankings on a graph that
/// node removal has split.
pub fn on_largest_component(g: &Graph, measure: &Measure, opts: &ScoreOpts) -> Result<NodeScores> {
    let comps = connected_components(g);
    let keep: Vec<bool> = comps.labels.iter().map(|&l| l == 0).collect();
    let mut values = vec![f64::NEG_INFINITY; g.node_count()];
    let (sub, ids) = g.induced_subgraph(&keep)?;
    let info = if sub.node_count() >= 2 {
        let (_, scores) = compute(&sub, measure, opts)?;
        for (v, s) in ids.iter().zip(&scores.values) {
            values[*v] = *s;
        }
        scores.info
    } else {
        Default::default()
    };
    Ok(NodeScores { values, info })
}
