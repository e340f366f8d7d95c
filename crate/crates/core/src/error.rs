use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Operands built over incompatible spaces (dimension, ring, truncation,
    /// fiber form).
    #[error("incompatible operands: {0}")]
    Mismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An identity that must hold by construction failed. Always a bug or a
    /// corrupted input, never a recoverable condition.
    #[error("internal consistency violation: {0}")]
    Consistency(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}
