//! Current-flow betweenness with a leaky ground node ("alpha current flow"),
//! together with the baseline centralities and experiment helpers used to
//! compare them.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: immutable simple graphs, edge-list I/O, random generators,
//!   BFS, components and summary statistics.
//! - [`solver`]: rows of `C = (D - αA)^-1` by dense factorisation, truncated
//!   Neumann series (power iteration) or Monte Carlo walks, the voltage-drop
//!   identity that turns two rows into edge potentials, and a direct
//!   grounded Kirchhoff solve used as an oracle.
//! - [`centrality`]: alpha-CF betweenness (exact, sampled, truncated), the
//!   classic current-flow baseline, Brandes shortest-path betweenness,
//!   closeness, PageRank and degree.
//! - [`analysis`]: Kendall tau-b, correlation tables, CCDFs and node-removal
//!   vulnerability sweeps.
//!
//! With the default `parallel` feature the heavy loops run on rayon; without
//! it every loop falls back to a plain sequential iterator and produces the
//! same bits.

pub mod analysis;
pub mod centrality;
mod error;
pub mod graph;
mod par;
mod seeding;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{Graph, GraphStats, RelabelMap};
pub use solver::{Alpha, Method, PotentialRow, RowSolver, SolverConfig};
