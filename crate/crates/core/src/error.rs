use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid concept: {0}")]
    InvalidConcept(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("point {0} is not covered by the pushforward partition")]
    MapNotTotal(f64),
    #[error("sample point {0} is not an atom of the universe")]
    OffAtom(f64),
    #[error("enumeration of {count} members exceeds cap {cap}")]
    EnumerationCap { count: u128, cap: u128 },
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("retry budget exhausted: best {best} of required {required}")]
    RetryBudget { best: usize, required: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub(crate) fn arg(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
