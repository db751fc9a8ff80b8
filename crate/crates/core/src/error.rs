use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} outside alphabet [1..{n}]")]
    LetterOutOfRange { letter: u32, n: u32 },

    #[error("alphabet rank must be at least 1")]
    EmptyAlphabet,

    #[error("column entries must strictly increase downward: {0:?}")]
    NotAColumn(Vec<u32>),

    #[error("gluing sequence has length {got}, expected {expected}")]
    GluingLength { got: usize, expected: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("redex {rule} at {index} does not apply")]
    NotApplicable { rule: String, index: usize },

    #[error("step budget of {budget} exceeded")]
    Termination { budget: usize },

    #[error("search exceeded cap of {cap} states")]
    Resource { cap: usize },

    #[error("operator index {i} outside 1..{max}")]
    OperatorIndex { i: u32, max: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
