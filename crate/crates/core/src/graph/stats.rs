use super::traversal::{components_masked, Bfs, UNREACHED};
use super::Graph;
use crate::{par, Error, Result};

/// Summary row matching the usual dataset-characteristics table.
///
/// `diameter` and `mean_distance` are taken over the largest connected
/// component. `clustering` averages local clustering over all nodes, with
/// nodes of degree < 2 counted as 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub mean_degree: f64,
    pub diameter: usize,
    pub clustering: f64,
    /// Same average but over nodes of degree >= 2 only.
    pub clustering_nonleaf: f64,
    pub mean_distance: f64,
}

impl GraphStats {
    pub const CSV_HEADER: &'static str = "n,m,mean_degree,diameter,clustering,mean_distance";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.2},{},{:.3},{:.3}",
            self.n, self.m, self.mean_degree, self.diameter, self.clustering, self.mean_distance
        )
    }
}

/// Local clustering coefficient of every node.
pub(crate) fn local_clustering(g: &Graph) -> Vec<Option<f64>> {
    par::map_range(g.node_count(), |v| {
        let nb = g.neighbors(v);
        let d = nb.len();
        if d < 2 {
            return None;
        }
        let mut triangles = 0usize;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    triangles += 1;
                }
            }
        }
        Some(triangles as f64 / (d * (d - 1) / 2) as f64)
    })
}

pub fn compute_stats(g: &Graph) -> Result<GraphStats> {
    let (n, m) = (g.node_count(), g.edge_count());
    if m == 0 {
        return Err(Error::EmptyGraph(
            "statistics need at least one edge".into(),
        ));
    }
    let local = local_clustering(g);
    let clustering = local.iter().map(|c| c.unwrap_or(0.0)).sum::<f64>() / n as f64;
    let nonleaf: Vec<f64> = local.iter().flatten().copied().collect();
    let clustering_nonleaf = if nonleaf.is_empty() {
        0.0
    } else {
        nonleaf.iter().sum::<f64>() / nonleaf.len() as f64
    };

    let comps = components_masked(g, None);
    let members: Vec<usize> = (0..n).filter(|&v| comps.labels[v] == 0).collect();
    let per_source = par::map_slice(&members, |&s| {
        let mut bfs = Bfs::new(n);
        bfs.run(g, s, None);
        let mut ecc = 0u32;
        let mut total = 0u64;
        for &v in &bfs.order {
            let d = bfs.dist[v];
            debug_assert_ne!(d, UNREACHED);
            ecc = ecc.max(d);
            total += d as u64;
        }
        (ecc, total)
    });
    let diameter = per_source.iter().map(|p| p.0).max().unwrap_or(0) as usize;
    let total: u64 = per_source.iter().map(|p| p.1).sum();
    let k = members.len();
    let mean_distance = if k > 1 {
        total as f64 / (k * (k - 1)) as f64
    } else {
        0.0
    };
    Ok(GraphStats {
        n,
        m,
        mean_degree: 2.0 * m as f64 / n as f64,
        diameter,
        clustering,
        clustering_nonleaf,
        mean_distance,
    })
}
