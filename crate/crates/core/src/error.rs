use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ambient group mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A structural claim that the hardness argument guarantees did not hold.
    /// This always indicates a bug, never a property of the input.
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
