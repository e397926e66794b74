use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty graph: {0}")]
    EmptyGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("node {0} has degree 0; the potential system is singular there")]
    IsolatedNode(usize),

    #[error("graph is disconnected ({components} components); {context}")]
    Disconnected { components: usize, context: String },

    #[error("no convergence after {iterations} iterations (residual bound {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("dense solve needs n <= {limit}, graph has n = {n}")]
    TooLargeForDense { n: usize, limit: usize },

    #[error(
        "exact computation needs about {work:.3e} pair-edge evaluations (budget {budget:.3e}); \
         use the sampled method instead (e.g. --pairs N)"
    )]
    ExactBudgetExceeded { work: f64, budget: f64 },

    #[error("rows come from different solves: {0}")]
    RowMismatch(String),

    #[error("rank correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
