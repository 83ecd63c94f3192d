use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sequence: element {value} at position {index} is below 1")]
    InvalidSequence { index: usize, value: u64 },

    #[error("invalid sequence: {0}")]
    EmptySequence(&'static str),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("identity does not apply: {0}")]
    InvalidTransform(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A constructed sequence failed direct evaluation. Never expected.
    #[error("construction invariant broken: {0}")]
    ConstructionInvariant(String),

    #[error("no seed sequence with continuant {a}^{m}, elements below {bound} and admissible endpoints")]
    SeedNotFound { a: u64, bound: u64, m: u32 },

    #[error("node budget of {budget} exceeded after {nodes_visited} nodes ({partial_count} sequences found so far)")]
    BudgetExceeded { budget: u64, nodes_visited: u64, partial_count: u64 },

    #[error("count does not fit in 64 bits")]
    CountOverflow,

    #[error("target {0} is too large for exhaustive search")]
    TargetTooLarge(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("no matrix for s = {0}; odd s and s = 2 are scalar cases")]
    NoMatrixCase(u32),

    #[error("root bracketing failed: {0}")]
    Bracketing(String),

    #[error("seed cache: {0}")]
    SeedCache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
