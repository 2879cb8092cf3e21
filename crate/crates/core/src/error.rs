use thiserror::Error;

/// Failure modes shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
