use thiserror::Error;

/// Errors raised by hypergraph construction, tensor contractions and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("edge {edge} has {found} vertices, expected {expected}")]
    EdgeArity {
        edge: usize,
        expected: usize,
        found: usize,
    },

    #[error("vertex index {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("exhaustive search over {n} vertices exceeds the configured limit of {limit}")]
    SearchLimit { n: usize, limit: usize },

    #[error("search undecided at budget of {budget} nodes")]
    BudgetExhausted { budget: u64 },

    #[error("operation requires a simple m-graph (no hyperloops, no repeated edges)")]
    NotSimple,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("tensor has negative entries")]
    NegativeEntries,

    #[error("tensor is zero")]
    ZeroTensor,

    #[error("dense tensor of order {order} and dimension {dim} exceeds {max} entries")]
    TooLarge { order: usize, dim: usize, max: u64 },

    #[error("no convergence after {iterations} iterations (last value {value}, gap {gap:e})")]
    NotConverged {
        iterations: usize,
        value: f64,
        gap: f64,
    },

    #[error("shifted iterate vanished; choose a different shift or start")]
    DegenerateShift,

    #[error("eigenpair residual {residual:e} exceeds certification bound {bound:e}")]
    Certification { residual: f64, bound: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
