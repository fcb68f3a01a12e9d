use thiserror::Error;

/// Errors raised by constructors and numeric routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not positive definite (smallest eigenvalue {0:e})")]
    NotPositiveDefinite(f64),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("function value {value} exceeds declared sup-norm bound {bound}")]
    SupNormViolated { value: f64, bound: f64 },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("support too large: {0} atoms")]
    SupportTooLarge(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
