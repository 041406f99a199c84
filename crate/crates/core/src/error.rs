use alloc::string::String;

use thiserror::Error;

/// Errors raised by the exact-algebra kernels.
///
/// Variants are grouped by what went wrong rather than by module; callers that
/// need a coarse classification (for example to pick a process exit code) use
/// [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("work estimate {estimate} exceeds budget {budget}")]
    Budget { estimate: String, budget: u128 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("degenerate frame: rank {rank} < {expected}")]
    DegenerateFrame { rank: usize, expected: usize },
    #[error("point lies outside the chart z_{index} != 0")]
    OutsideChart { index: String },
    #[error("indeterminacy locus: {0}")]
    Indeterminacy(String),
    #[error("centre of projection: {0}")]
    ProjectionCentre(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Budget,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::Budget { .. } => ErrorKind::Budget,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
