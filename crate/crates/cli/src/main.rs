//! `alphacf`: centrality experiments on edge-list graphs.
//!
//! Exit codes: 0 on success, 1 on runtime or convergence failures, 2 on
//! usage and input-format errors.

mod commands;
mod measure;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use alphacf::Method;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "alphacf",
    version,
    about = "Alpha current-flow betweenness and friends"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "ALPHACF_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size, degree, diameter, clustering and mean distance of a graph.
    Stats(StatsArgs),
    /// Write a random graph as an edge list.
    Generate(GenerateArgs),
    /// Node and edge scores of one measure.
    Centrality(CentralityArgs),
    /// Kendall tau between the node rankings of several measures.
    Correlate(CorrelateArgs),
    /// Complementary distribution of scores, for log-linear plots.
    Ccdf(CcdfArgs),
    /// Connectivity while removing the top-ranked nodes.
    Vulnerability(VulnerabilityArgs),
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Edge list: two labels per line, `#` or `%` comments.
    input: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    /// Watts-Strogatz small world (needs --k, --p).
    Ws,
    /// Erdős-Rényi G(n, p) (needs --p).
    Er,
    /// Barabási-Albert preferential attachment (needs --m0).
    Ba,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    /// Ring neighbours per node (even).
    #[arg(long)]
    k: Option<usize>,
    /// Rewiring or edge probability.
    #[arg(long)]
    p: Option<f64>,
    /// Edges added per new node.
    #[arg(long)]
    m0: Option<usize>,
    #[arg(long, env = "ALPHACF_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Options shared by every command that computes scores.
#[derive(Args, Debug, Clone)]
struct ScoreOpts {
    /// α in (0, 1); defaults to 0.98, or 0.8 with --truncated.
    #[arg(long, env = "ALPHACF_ALPHA")]
    alpha: Option<f64>,
    /// Drop pairs whose source is an endpoint of the edge.
    #[arg(long)]
    truncated: bool,
    /// Sample this many source-destination pairs instead of all of them.
    #[arg(long, env = "ALPHACF_PAIRS", conflicts_with = "exact")]
    pairs: Option<usize>,
    /// Use all pairs (the default unless --pairs is given).
    #[arg(long)]
    exact: bool,
    /// Row solver; direct for exact runs and power for sampled runs by default.
    #[arg(long, env = "ALPHACF_METHOD", value_parser = parse_method)]
    method: Option<Method>,
    /// Absolute tolerance of power-series rows.
    #[arg(long, env = "ALPHACF_EPSILON", default_value_t = 1e-8)]
    epsilon: f64,
    /// Random walks per row for the Monte Carlo solver.
    #[arg(long, env = "ALPHACF_WALKS", default_value_t = 100_000)]
    walks: u64,
    #[arg(long, env = "ALPHACF_SEED", default_value_t = 0)]
    seed: u64,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: alphacf::Error| e.to_string())
}

#[derive(Args, Debug)]
struct CentralityArgs {
    input: PathBuf,
    /// degree, pagerank, closeness, betweenness, cf, alpha_cf[:α], alpha_cf_tr[:α].
    #[arg(long, default_value = "alpha_cf")]
    measure: String,
    #[command(flatten)]
    score: ScoreOpts,
    /// Directory for `<measure>_nodes.csv` and, for edge measures,
    /// `<measure>_edges.csv`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct CorrelateArgs {
    input: PathBuf,
    /// Comma-separated measures; the eight standard ones by default.
    #[arg(long, value_delimiter = ',')]
    measures: Vec<String>,
    #[command(flatten)]
    score: ScoreOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Level {
    Edges,
    Nodes,
    /// Individual pair scores of the edge given by --edge.
    Pairs,
}

#[derive(Args, Debug)]
struct CcdfArgs {
    input: PathBuf,
    #[arg(long, default_value = "alpha_cf")]
    measure: String,
    #[arg(long, value_enum, default_value_t = Level::Edges)]
    level: Level,
    /// Edge `u,v` (input labels) for --level pairs.
    #[arg(long)]
    edge: Option<String>,
    #[command(flatten)]
    score: ScoreOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VulnerabilityArgs {
    input: PathBuf,
    /// Comma-separated ranking measures, one trace each.
    #[arg(long, value_delimiter = ',', default_value = "alpha_cf")]
    measures: Vec<String>,
    /// Recompute the ranking on the remaining graph after every step.
    #[arg(long)]
    recompute: bool,
    /// Stop after removing this fraction of the nodes.
    #[arg(long, default_value_t = 1.0)]
    max_fraction: f64,
    /// Nodes removed per step (default: 1 for n <= 200, else 1% of n).
    #[arg(long, conflicts_with = "step_fraction")]
    step_nodes: Option<usize>,
    /// Fraction of nodes removed per step.
    #[arg(long)]
    step_fraction: Option<f64>,
    #[command(flatten)]
    score: ScoreOpts,
    /// Directory for `vulnerability_<measure>.csv` files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

/// Errors caused by the invocation rather than by the computation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use alphacf::Error as E;
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Parse { .. }
                | E::EmptyGraph(_)
                | E::InvalidParameter(_)
                | E::UnknownMeasure(_)
                | E::NodeOutOfRange { .. }
                | E::NotAnEdge(..) => 2,
                _ => 1,
            };
        }
    }
    1
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        let io = cause.downcast_ref::<std::io::Error>().or_else(|| {
            match cause.downcast_ref::<alphacf::Error>() {
                Some(alphacf::Error::Io(e)) => Some(e),
                _ => None,
            }
        });
        io.is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(UsageError("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()?;
    }
    match cli.command {
        Command::Stats(a) => commands::stats(&a),
        Command::Generate(a) => commands::generate(&a),
        Command::Centrality(a) => commands::centrality(&a),
        Command::Correlate(a) => commands::correlate(&a),
        Command::Ccdf(a) => commands::ccdf(&a),
        Command::Vulnerability(a) => commands::vulnerability(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed downstream pipe (e.g. `| head`) is not a failure.
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
