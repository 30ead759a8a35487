//! Library-wide error type.

use crate::crystal::ValidationReport;

/// Errors produced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An index outside the root system's index set was used.
    #[error("unknown index {index} (index set {index_set:?})")]
    UnknownIndex { index: usize, index_set: Vec<usize> },

    /// A vector had the wrong number of coordinates.
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    Shape { expected: usize, got: usize },

    /// A precondition on the inputs was violated.
    #[error("{0}")]
    Domain(String),

    /// Two quasi-crystals with different root systems were combined.
    #[error("root systems of the factors differ")]
    TypeMismatch,

    /// A word contained a token that names no carrier element.
    #[error("letter {token:?} at position {position} is not in the carrier")]
    ForeignLetter { token: String, position: usize },

    /// Component construction hit the configured vertex cap.
    #[error("vertex cap {cap} exceeded while expanding component")]
    CapExceeded { cap: usize },

    /// A loaded quasi-crystal failed the seminormality axioms.
    #[error("quasi-crystal violates the seminormality axioms ({} violation(s))", .0.violations.len())]
    InvalidCrystal(Box<ValidationReport>),

    /// Malformed textual input (word literals, schema fields).
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
