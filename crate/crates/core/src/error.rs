use thiserror::Error;

/// Errors produced while building or running a search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {0} is not in the alphabet")]
    NotInAlphabet(u32),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("score {score} outside 0..={m}")]
    ScoreOutOfRange { score: i64, m: usize },

    #[error("character class must not be empty")]
    EmptyClass,

    #[error("pattern must have at least one position")]
    EmptyPattern,

    #[error("polynomial length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("vector dimensions do not match: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arithmetic capacity exceeded: {0}")]
    Overflow(String),

    #[error("line {line}: {message}")]
    InputFormat { line: usize, message: String },

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
