use thiserror::Error;

/// Errors raised by the group kernel and everything built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    Size { order: u128, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a homomorphism: {0}")]
    Verification(String),

    #[error("search exhausted: {0}")]
    Search(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
