use std::io::Write;
use std::path::Path;

use alphacf::analysis::{
    ccdf as ccdf_of, correlation_table, vulnerability_sweep, vulnerability_sweep_recomputed,
    Measure, RemovalSchedule, SweepConfig,
};
use alphacf::graph::{
    barabasi_albert, compute_stats, erdos_renyi, load_edge_list_file, watts_strogatz,
    write_edge_list, GraphStats,
};
use alphacf::{Graph, RelabelMap};
use anyhow::{Context, Result};

use crate::measure::{self, compute, resolve, resolve_all};
use crate::output::{create_dir, file_stem, in_dir, open, RunConfig};
use crate::{
    CcdfArgs, CentralityArgs, CorrelateArgs, GenerateArgs, Level, Model, StatsArgs, UsageError,
    VulnerabilityArgs,
};

fn load(path: &Path) -> Result<(Graph, RelabelMap)> {
    let (g, labels, report) =
        load_edge_list_file(path).with_context(|| format!("reading {}", path.display()))?;
    if report.self_loops > 0 || report.duplicates > 0 {
        eprintln!(
            "note: {}: ignored {} self-loop(s) and {} duplicate edge(s)",
            path.display(),
            report.self_loops,
            report.duplicates
        );
    }
    Ok((g, labels))
}

fn header(out: &mut dyn Write, cfg: &RunConfig) -> Result<()> {
    for line in cfg.lines() {
        writeln!(out, "# {line}")?;
    }
    Ok(())
}

pub fn stats(a: &StatsArgs) -> Result<()> {
    let (g, _) = load(&a.input)?;
    let s = compute_stats(&g)?;
    let mut cfg = RunConfig::new("stats", Some(&a.input));
    cfg.set(
        "clustering",
        "mean local clustering, degree < 2 counted as 0",
    )
    .set("clustering_nonleaf", format!("{:.3}", s.clustering_nonleaf))
    .set(
        "distances",
        "diameter and mean distance of the largest component",
    );
    let mut out = open(a.out.as_deref())?;
    header(&mut *out, &cfg)?;
    writeln!(out, "{}", GraphStats::CSV_HEADER)?;
    writeln!(out, "{}", s.csv_row())?;
    out.flush()?;
    Ok(())
}

fn need<T>(value: Option<T>, flag: &str, model: &str) -> Result<T> {
    value.ok_or_else(|| UsageError(format!("{model} needs --{flag}")).into())
}

pub fn generate(a: &GenerateArgs) -> Result<()> {
    let mut cfg = RunConfig::new("generate", None);
    let g = match a.model {
        Model::Ws => {
            let (k, p) = (need(a.k, "k", "ws")?, need(a.p, "p", "ws")?);
            cfg.set("model", format!("watts_strogatz(n={}, k={k}, p={p})", a.n));
            watts_strogatz(a.n, k, p, a.seed)?
        }
        Model::Er => {
            let p = need(a.p, "p", "er")?;
            cfg.set("model", format!("erdos_renyi(n={}, p={p})", a.n));
            erdos_renyi(a.n, p, a.seed)?
        }
        Model::Ba => {
            let m0 = need(a.m0, "m0", "ba")?;
            cfg.set("model", format!("barabasi_albert(n={}, m0={m0})", a.n));
            barabasi_albert(a.n, m0, a.seed)?
        }
    };
    cfg.set("seed", a.seed);
    let mut out = open(a.out.as_deref())?;
    write_edge_list(&g, &cfg.lines(), &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn centrality(a: &CentralityArgs) -> Result<()> {
    let (g, labels) = load(&a.input)?;
    let m = resolve(&a.measure, &a.score)?;
    let (edges, nodes) = compute(&g, &m, &a.score)?;
    let mut cfg = RunConfig::new("centrality", Some(&a.input));
    if matches!(m, Measure::AlphaCf { .. }) {
        let method = measure::solver_config(&a.score, a.score.pairs.is_some()).method;
        cfg.set("method", method);
        if method == alphacf::Method::MonteCarlo {
            cfg.set("walks", a.score.walks);
        }
    }
    create_dir(&a.out)?;
    let stem = file_stem(&m.to_string());
    let path = in_dir(&a.out, format!("{stem}_nodes.csv"));
    let mut out = open(Some(&path))?;
    nodes.write_labeled_csv(Some(&labels), &cfg.lines(), &mut out)?;
    out.flush()?;
    if let Some(edges) = edges {
        let path = in_dir(&a.out, format!("{stem}_edges.csv"));
        let mut out = open(Some(&path))?;
        edges.write_labeled_csv(&g, Some(&labels), &cfg.lines(), &mut out)?;
        out.flush()?;
    }
    Ok(())
}

pub fn correlate(a: &CorrelateArgs) -> Result<()> {
    let (g, _) = load(&a.input)?;
    let measures = resolve_all(&a.measures, &a.score)?;
    let table = correlation_table(&g, &measures, &measure::params(&a.score)?)?;
    let mut cfg = RunConfig::new("correlate", Some(&a.input));
    cfg.set("statistic", "kendall tau-b of node scores")
        .scores(&a.score);
    let mut out = open(a.out.as_deref())?;
    table.write_csv(&cfg.lines(), &mut out)?;
    out.flush()?;
    Ok(())
}

fn find_edge(g: &Graph, labels: &RelabelMap, spec: &str) -> Result<(usize, usize)> {
    let bad = || {
        UsageError(format!(
            "--edge expects `u,v` with input labels, got `{spec}`"
        ))
    };
    let (u, v) = spec.split_once(',').ok_or_else(bad)?;
    let id = |label: &str| {
        labels
            .id(label.trim())
            .ok_or_else(|| UsageError(format!("unknown node `{}`", label.trim())))
    };
    let (u, v) = (id(u)?, id(v)?);
    if !g.has_edge(u, v) {
        return Err(UsageError(format!("`{spec}` is not an edge")).into());
    }
    Ok((u, v))
}

pub fn ccdf(a: &CcdfArgs) -> Result<()> {
    let (g, labels) = load(&a.input)?;
    let m = resolve(&a.measure, &a.score)?;
    let mut cfg = RunConfig::new("ccdf", Some(&a.input));
    cfg.set("measure", m);
    let values = match a.level {
        Level::Pairs => {
            let Measure::AlphaCf { alpha, truncated } = m else {
                return Err(UsageError("--level pairs needs an alpha_cf measure".into()).into());
            };
            let spec = a
                .edge
                .as_deref()
                .ok_or_else(|| UsageError("--level pairs needs --edge u,v".into()))?;
            let (u, v) = find_edge(&g, &labels, spec)?;
            cfg.set("level", format!("pairs on edge {spec}"));
            measure::alpha_cf(alpha, truncated, &a.score)?.pair_values(&g, u, v)?
        }
        Level::Edges => {
            cfg.set("level", "edges").scores(&a.score);
            compute(&g, &m, &a.score)?
                .0
                .ok_or_else(|| UsageError(format!("{m} has no edge scores; use --level nodes")))?
                .values
        }
        Level::Nodes => {
            cfg.set("level", "nodes").scores(&a.score);
            compute(&g, &m, &a.score)?.1.values
        }
    };
    let mut out = open(a.out.as_deref())?;
    ccdf_of(&values).write_csv(&cfg.lines(), &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn vulnerability(a: &VulnerabilityArgs) -> Result<()> {
    let (g, _) = load(&a.input)?;
    let measures = resolve_all(&a.measures, &a.score)?;
    let schedule = match (a.step_nodes, a.step_fraction) {
        (Some(k), _) => RemovalSchedule::Nodes(k),
        (None, Some(f)) => RemovalSchedule::Fraction(f),
        (None, None) => RemovalSchedule::Auto,
    };
    let sweep = SweepConfig {
        schedule,
        max_fraction: a.max_fraction,
    };
    create_dir(&a.out)?;
    for m in &measures {
        let trace = if a.recompute {
            vulnerability_sweep_recomputed(
                &g,
                &m.to_string(),
                |h| {
                    measure::on_largest_component(h, m, &a.score).map_err(|e| match e
                        .downcast::<alphacf::Error>()
                    {
                        Ok(e) => e,
                        Err(e) => alphacf::Error::InvalidParameter(format!("{e:#}")),
                    })
                },
                &sweep,
            )?
        } else {
            let (_, mut ranking) = compute(&g, m, &a.score)?;
            ranking.info.name = m.to_string();
            vulnerability_sweep(&g, &ranking, &sweep)?
        };
        let mut cfg = RunConfig::new("vulnerability", Some(&a.input));
        cfg.set(
            "ranking",
            if a.recompute {
                "recomputed after every step"
            } else {
                "static"
            },
        )
        .set(
            "step",
            match schedule {
                RemovalSchedule::Auto => "auto".to_owned(),
                RemovalSchedule::Nodes(k) => format!("{k} node(s)"),
                RemovalSchedule::Fraction(f) => format!("{f} of n"),
            },
        )
        .set("max_fraction", a.max_fraction);
        if matches!(m, Measure::AlphaCf { .. }) {
            cfg.scores(&a.score);
        }
        let path = in_dir(
            &a.out,
            format!("vulnerability_{}.csv", file_stem(&m.to_string())),
        );
        let mut out = open(Some(&path))?;
        trace.write_csv(&cfg.lines(), &mut out)?;
        out.flush()?;
    }
    Ok(())
}
