use thiserror::Error;

/// Errors shared across the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("valency mismatch: cannot compose ({0}, {1}) after ({2}, {3})")]
    ValencyMismatch(usize, usize, usize, usize),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("signed sequence mismatch: expected {expected}, found {found}")]
    SequenceMismatch { expected: String, found: String },

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("rewrite engine stalled: {0}")]
    RewriteStalled(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("non-square operator: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
