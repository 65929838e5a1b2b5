use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("matrix is not orthogonal (max |AᵀA - I| = {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("dimension {n} is not supported by {what}")]
    UnsupportedDimension { n: usize, what: &'static str },

    #[error("body does not contain the origin")]
    OriginNotContained,

    #[error("bounding ball has zero radius")]
    DegenerateBound,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
