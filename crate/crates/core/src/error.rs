use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A pattern string whose length is not of the form 2^q - 1.
    #[error("pattern {0:?} has length {1}, expected 2^q - 1 for some q >= 1")]
    InvalidAlpha(String, usize),

    #[error("string structures must be nonempty")]
    EmptyString,

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("alphabet must be nonempty")]
    EmptyAlphabet,

    #[error("expected {expected} symbols, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("similarity is undefined for identical strings")]
    UndefinedSimilarity,

    #[error("sample is inconsistent: {0:?} is classified both positive and negative")]
    InconsistentSample(String),

    #[error("the sample is empty")]
    EmptySample,

    #[error("no formula to choose from an empty distinguishability set")]
    EmptySet,

    #[error("unbound variable {0:?}")]
    UnboundVariable(String),

    #[error("resource guard exceeded: {0}")]
    Capacity(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed formula document: {0}")]
    Deserialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;
