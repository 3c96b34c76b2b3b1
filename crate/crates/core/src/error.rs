use thiserror::Error;

/// Errors raised by the exact-arithmetic and configuration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("points coincide; no unique line through them")]
    IdenticalPoints,
    #[error("lines coincide; no unique intersection point")]
    IdenticalLines,
    #[error("repeated line in concurrency test")]
    RepeatedLine,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("point set is not closed under the group action: {point} escapes")]
    NotClosed { point: String },
    #[error("generators computed only up to degree {computed}, need degree {required}")]
    IncompleteGenerators { computed: usize, required: usize },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("reference check failed: {0}")]
    ReferenceMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
