use thiserror::Error;

use crate::trace::ReductionTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error in `{input}`: {message}")]
    Parse { input: String, message: String },

    #[error("context mismatch: {0}")]
    Context(String),

    #[error("degenerate group: {0}")]
    DegenerateGroup(String),

    #[error("{value} is not an element of the group lattice")]
    NotInLattice { value: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error("search exhausted up to height {cap}: {what}")]
    SearchExhausted { what: String, cap: u32 },

    /// A step the reduction argument guarantees did not hold.
    #[error("proof violation: {message}")]
    ProofViolation { message: String, trace: Box<ReductionTrace> },

    #[error("strip exhausted: {message}")]
    StripExhausted { message: String, trace: Box<ReductionTrace> },
}

impl Error {
    pub(crate) fn parse(input: &str, message: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), message: message.into() }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// The trace carried by reduction failures, if any.
    pub fn trace(&self) -> Option<&ReductionTrace> {
        match self {
            Error::ProofViolation { trace, .. } | Error::StripExhausted { trace, .. } => Some(trace),
            _ => None,
        }
    }
}
