use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MajorError {
    #[error("probability vector must have at least one entry")]
    Empty,
    #[error("entry {index} is negative")]
    NegativeEntry { index: usize },
    #[error("entries sum to {sum}, not 1")]
    NotNormalised { sum: String },
    #[error("index {index} out of range for alphabet of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("first argument does not majorise the second")]
    NotMajorised,
    #[error("matrix is not square bistochastic")]
    NotBistochastic,
    #[error("vector must have full support")]
    NotFullSupport,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("continuous extension did not converge: bracket [{lower}, {upper}]")]
    ExtensionDiverged { lower: f64, upper: f64 },
    #[error("witness is infeasible: {0}")]
    WitnessInfeasible(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MajorError>;
