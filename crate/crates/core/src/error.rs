use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("variable index {index} outside 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("no spike of degree {n} fits in {k} variables (mu = {mu})")]
    NoSpike { n: u32, k: usize, mu: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("estimated storage of {needed} bytes exceeds the budget of {budget} bytes")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("certificate {name}: {reason}")]
    Certificate { name: String, reason: String },

    #[error("{origin}: {message}")]
    Corpus { origin: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
