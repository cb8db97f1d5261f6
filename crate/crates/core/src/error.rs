use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The sign oracle could not separate a value from zero within the precision cap.
    #[error("precision exhausted: could not certify a sign within {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("numbers over different symbolic bases cannot be combined")]
    BasisMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("descriptor is not enumerable: {0}")]
    NotEnumerable(String),
    #[error("unsupported coordinates: {0}")]
    UnsupportedCoordinates(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
