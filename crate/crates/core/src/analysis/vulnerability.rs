use std::io::Write;

use crate::centrality::NodeScores;
use crate::graph::{components_masked, Bfs, Graph};
use crate::{par, Error, Result};

const BFS_CHUNKS: usize = 32;

/// Mean of `1/d(u,v)` over ordered pairs of distinct nodes, with disconnected
/// pairs contributing 0. Returns 0 for fewer than two nodes.
pub fn inverse_average_distance(g: &Graph) -> f64 {
    inverse_average_distance_masked(g, None)
}

/// [`inverse_average_distance`] of the subgraph induced by `alive`, averaged
/// over the surviving nodes only.
pub(crate) fn inverse_average_distance_masked(g: &Graph, alive: Option<&[bool]>) -> f64 {
    let n = g.node_count();
    let sources: Vec<usize> = match alive {
        Some(a) => (0..n).filter(|&v| a[v]).collect(),
        None => (0..n).collect(),
    };
    let live = sources.len();
    if live < 2 {
        return 0.0;
    }
    let chunk = live.div_ceil(BFS_CHUNKS);
    let partial = par::map_range(BFS_CHUNKS, |c| {
        let lo = (c * chunk).min(live);
        let hi = ((c + 1) * chunk).min(live);
        let mut bfs = Bfs::new(n);
        let mut sum = 0.0;
        for &s in &sources[lo..hi] {
            bfs.run(g, s, alive);
            sum += bfs.order[1..]
                .iter()
                .map(|&v| 1.0 / f64::from(bfs.dist[v]))
                .sum::<f64>();
        }
        sum
    });
    partial.iter().sum::<f64>() / (live as f64 * (live - 1) as f64)
}

/// How many nodes to remove between consecutive measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RemovalSchedule {
    /// One node at a time for graphs of at most 200 nodes, 1% otherwise.
    Auto,
    Nodes(usize),
    Fraction(f64),
}

impl RemovalSchedule {
    fn step(self, n: usize) -> Result<usize> {
        match self {
            RemovalSchedule::Auto if n <= 200 => Ok(1),
            RemovalSchedule::Auto => RemovalSchedule::Fraction(0.01).step(n),
            RemovalSchedule::Nodes(0) => Err(Error::InvalidParameter(
                "removal step must be at least one node".into(),
            )),
            RemovalSchedule::Nodes(k) => Ok(k),
            RemovalSchedule::Fraction(f) if f > 0.0 && f <= 1.0 => {
                Ok(((f * n as f64).round() as usize).max(1))
            }
            RemovalSchedule::Fraction(f) => Err(Error::InvalidParameter(format!(
                "removal step fraction must lie in (0, 1], got {f}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub schedule: RemovalSchedule,
    /// Stop once this fraction of nodes has been removed.
    pub max_fraction: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            schedule: RemovalSchedule::Auto,
            max_fraction: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemovalPoint {
    pub removed: usize,
    pub fraction: f64,
    pub inverse_avg_distance: f64,
    pub lcc_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemovalTrace {
    pub strategy: String,
    pub points: Vec<RemovalPoint>,
}

impl RemovalTrace {
    pub fn write_csv<W: Write>(&self, header: &[String], mut out: W) -> Result<()> {
        writeln!(out, "# strategy: {}", self.strategy)?;
        for line in header {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "fraction,inv_avg_dist,lcc_size")?;
        for p in &self.points {
            writeln!(
                out,
                "{:.6},{:.12e},{}",
                p.fraction, p.inverse_avg_distance, p.lcc_size
            )?;
        }
        Ok(())
    }

    /// Linear interpolation of the inverse average distance at `fraction`.
    pub fn inverse_avg_distance_at(&self, fraction: f64) -> Option<f64> {
        let i = self.points.partition_point(|p| p.fraction < fraction);
        let hi = self.points.get(i)?;
        if i == 0 || hi.fraction == fraction {
            return (hi.fraction == fraction).then_some(hi.inverse_avg_distance);
        }
        let lo = &self.points[i - 1];
        let t = (fraction - lo.fraction) / (hi.fraction - lo.fraction);
        Some(lo.inverse_avg_distance + t * (hi.inverse_avg_distance - lo.inverse_avg_distance))
    }
}

fn measure(g: &Graph, alive: &[bool], removed: usize) -> RemovalPoint {
    let n = g.node_count();
    RemovalPoint {
        removed,
        fraction: removed as f64 / n as f64,
        inverse_avg_distance: inverse_average_distance_masked(g, Some(alive)),
        lcc_size: if removed == n {
            0
        } else {
            components_masked(g, Some(alive)).largest()
        },
    }
}

fn check_config(g: &Graph, cfg: &SweepConfig) -> Result<(usize, usize)> {
    let n = g.node_count();
    if !(cfg.max_fraction > 0.0 && cfg.max_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "max removal fraction must lie in (0, 1], got {}",
            cfg.max_fraction
        )));
    }
    let step = cfg.schedule.step(n)?;
    let limit = ((cfg.max_fraction * n as f64).floor() as usize).min(n);
    Ok((step, limit))
}

/// Removes nodes in descending order of `ranking` (ties by ascending id),
/// computed once on the intact graph, and records connectivity after every
/// step. The first point is the intact graph.
pub fn vulnerability_sweep(
    g: &Graph,
    ranking: &NodeScores,
    cfg: &SweepConfig,
) -> Result<RemovalTrace> {
    let n = g.node_count();
    if ranking.len() != n {
        return Err(Error::RowMismatch(format!(
            "ranking has {} scores for a graph with {n} nodes",
            ranking.len()
        )));
    }
    let (step, limit) = check_config(g, cfg)?;
    let order = ranking.ranking();
    let mut alive = vec![true; n];
    let mut points = vec![measure(g, &alive, 0)];
    let mut removed = 0;
    while removed < limit {
        let next = (removed + step).min(limit);
        for &v in &order[removed..next] {
            alive[v] = false;
        }
        removed = next;
        points.push(measure(g, &alive, removed));
    }
    Ok(RemovalTrace {
        strategy: ranking.info.name.clone(),
        points,
    })
}

/// Like [`vulnerability_sweep`], but the ranking is recomputed by `rank` on
/// the residual graph before every step. `rank` receives the induced
/// subgraph of surviving nodes (renumbered `0..n'`).
pub fn vulnerability_sweep_recomputed<F>(
    g: &Graph,
    strategy: &str,
    mut rank: F,
    cfg: &SweepConfig,
) -> Result<RemovalTrace>
where
    F: FnMut(&Graph) -> Result<NodeScores>,
{
    let n = g.node_count();
    let (step, limit) = check_config(g, cfg)?;
    let mut alive = vec![true; n];
    let mut points = vec![measure(g, &alive, 0)];
    let mut removed = 0;
    while removed < limit {
        let take = step.min(limit - removed);
        let (sub, ids) = g.induced_subgraph(&alive)?;
        let scores = rank(&sub)?;
        if scores.len() != sub.node_count() {
            return Err(Error::RowMismatch(format!(
                "ranking has {} scores for a residual graph with {} nodes",
                scores.len(),
                sub.node_count()
            )));
        }
        for &v in &scores.ranking()[..take] {
            alive[ids[v]] = false;
        }
        removed += take;
        points.push(measure(g, &alive, removed));
    }
    Ok(RemovalTrace {
        strategy: format!("{strategy} (recomputed)"),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{degree_centrality, NodeScores};
    use crate::graph::fixtures::{build, complete, path, star};
    use crate::graph::{barabasi_albert, bfs_distances};

    fn brute_inverse(g: &Graph) -> f64 {
        let n = g.node_count();
        let mut sum = 0.0;
        for s in 0..n {
            for (t, d) in bfs_distances(g, s).unwrap().into_iter().enumerate() {
                if t != s {
                    sum += d.map_or(0.0, |d| 1.0 / d as f64);
                }
            }
        }
        sum / (n * (n - 1)) as f64
    }

    #[test]
    fn small_examples() {
        assert_eq!(inverse_average_distance(&complete(3)), 1.0);
        assert!((inverse_average_distance(&path(3)) - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(inverse_average_distance(&build(2, &[])), 0.0);
    }

    #[test]
    fn matches_brute_force() {
        let g = barabasi_albert(120, 2, 4).unwrap();
        assert!((inverse_average_distance(&g) - brute_inverse(&g)).abs() < 1e-12);
    }

    #[test]
    fn star_hub_removal_isolates_leaves() {
        let g = star(4);
        let trace = vulnerability_sweep(
            &g,
            &degree_centrality(&g),
            &SweepConfig {
                schedule: RemovalSchedule::Nodes(1),
                max_fraction: 0.2,
            },
        )
        .unwrap();
        assert_eq!(trace.points.len(), 2);
        assert_eq!(trace.points[0].lcc_size, 5);
        assert_eq!(trace.points[1].lcc_size, 1);
        assert_eq!(trace.points[1].inverse_avg_distance, 0.0);
        assert!((trace.points[1].fraction - 0.2).abs() < 1e-15);
    }

    #[test]
    fn trace_is_monotone_and_starts_intact() {
        let g = barabasi_albert(150, 2, 9).unwrap();
        let trace =
            vulnerability_sweep(&g, &degree_centrality(&g), &SweepConfig::default()).unwrap();
        assert_eq!(trace.points.len(), 151);
        assert_eq!(
            trace.points[0].inverse_avg_distance,
            inverse_average_distance(&g)
        );
        assert!(trace
            .points
            .windows(2)
            .all(|w| w[0].fraction < w[1].fraction));
        assert!(trace
            .points
            .windows(2)
            .all(|w| w[0].lcc_size >= w[1].lcc_size));
        let last = trace.points.last().unwrap();
        assert_eq!((last.removed, last.lcc_size), (150, 0));
    }

    #[test]
    fn ties_broken_by_id() {
        let g = path(4);
        let flat = NodeScores {
            values: vec![1.0; 4],
            info: Default::default(),
        };
        let cfg = SweepConfig {
            schedule: RemovalSchedule::Nodes(1),
            max_fraction: 0.25,
        };
        let trace = vulnerability_sweep(&g, &flat, &cfg).unwrap();
        // Node 0 goes first, leaving the path 1-2-3.
        assert_eq!(trace.points[1].lcc_size, 3);
    }

    #[test]
    fn recomputed_degree_on_star_of_stars() {
        let g = barabasi_albert(60, 1, 2).unwrap();
        let cfg = SweepConfig {
            schedule: RemovalSchedule::Fraction(0.1),
            max_fraction: 0.5,
        };
        let trace =
            vulnerability_sweep_recomputed(&g, "degree", |h| Ok(degree_centrality(h)), &cfg)
                .unwrap();
        assert_eq!(trace.points.len(), 6);
        assert!(trace
            .points
            .windows(2)
            .all(|w| w[0].lcc_size >= w[1].lcc_size));
        // The first recomputed step equals the static one.
        let fixed = vulnerability_sweep(&g, &degree_centrality(&g), &cfg).unwrap();
        assert_eq!(trace.points[1], fixed.points[1]);
    }

    #[test]
    fn rejects_bad_configs() {
        let g = path(4);
        let d = degree_centrality(&g);
        let bad = |schedule, max_fraction| {
            vulnerability_sweep(
                &g,
                &d,
                &SweepConfig {
                    schedule,
                    max_fraction,
                },
            )
            .is_err()
        };
        assert!(bad(RemovalSchedule::Nodes(0), 1.0));
        assert!(bad(RemovalSchedule::Fraction(0.0), 1.0));
        assert!(bad(RemovalSchedule::Auto, 0.0));
        assert!(bad(RemovalSchedule::Auto, 1.5));
    }
}
