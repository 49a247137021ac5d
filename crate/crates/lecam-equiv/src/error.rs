//! Error type shared across the crate.

use thiserror::Error;

/// Unified error for construction, numerical preconditions, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a documented requirement. The message states the
    /// requirement and the offending value.
    #[error("invalid argument: {0}")]
    Invalid(String),

    /// A computation requires a precondition that the inputs do not satisfy.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// The design renders the evaluation matrix numerically singular, so the
    /// system does not span the observation space at this design.
    #[error("design is numerically degenerate: {0}")]
    NonIsomorphic(String),

    /// Orthogonalization hit a column that is (numerically) inside the span
    /// of its predecessors.
    #[error("rank deficiency at column {index}: residual norm {residual:.3e} below tolerance")]
    RankDeficient { index: usize, residual: f64 },

    /// A covariance that must be positive semidefinite has a significantly
    /// negative eigenvalue.
    #[error("operator ordering violated: {0}")]
    OrderingViolation(String),

    /// The empirical Gram matrix is not the identity, so the isometric
    /// shortcut does not apply to this design/system pair.
    #[error("system is not empirically orthonormal at this design: {0}")]
    NotIsometric(String),

    /// A dyadic cell contains no design points, so the local average is
    /// undefined.
    #[error("empty dyadic bin at level {level}, cell {cell}")]
    EmptyBin { level: u32, cell: usize },

    /// The refinement filter does not determine integer values uniquely.
    #[error("degenerate refinement filter: {0}")]
    DegenerateFilter(String),

    /// Config file syntax or unknown key.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Shorthand for [`Error::Invalid`] with a formatted message.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
