//! Crate error type.

use thiserror::Error;

/// Errors reported by library operations.
#[derive(Error, Debug)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Evaluation requested at a genuine singularity (a pole of a measure
    /// with point masses, or a logarithmic singularity of a transform of a
    /// discontinuous density).
    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),

    /// Evaluation at a pole (point-mass location).
    #[error("pole at x = {0}")]
    Pole(f64),

    /// Evaluation at a branch point of a composed Herglotz function.
    #[error("branch point at {0}")]
    BranchPoint(String),

    /// A numerical routine failed to converge or broke down.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// File input/output failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
