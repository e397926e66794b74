//! Experiment helpers: rank correlation between measures, score
//! distributions and targeted node-removal sweeps.

mod ccdf;
mod correlation;
mod kendall;
mod vulnerability;

pub use ccdf::{ccdf, Ccdf};
pub use correlation::{correlation_table, AlphaCfMode, CorrelationMatrix, Measure, MeasureParams};
pub use kendall::{kendall_tau, kendall_tau_slices};
pub use vulnerability::{
    inverse_average_distance, vulnerability_sweep, vulnerability_sweep_recomputed, RemovalPoint,
    RemovalSchedule, RemovalTrace, SweepConfig,
};
