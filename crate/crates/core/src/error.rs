use thiserror::Error;

/// Errors raised by the public API. Internal invariant failures (inexact
/// Demazure division, coefficient overflow) panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse composition at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("box ({row}, {column}) is not movable")]
    NotMovable { row: usize, column: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
