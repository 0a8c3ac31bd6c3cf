use thiserror::Error;

use crate::words::{Family, Word};

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("word mixes `a` and `b` letters (column {column})")]
    MixedFamily { column: usize },
    #[error("index {index} out of range 1..={n} (column {column})")]
    IndexOutOfRange { index: u64, n: usize, column: usize },
    #[error("generator with repeated index {index} (column {column})")]
    DegeneratePair { index: usize, column: usize },
    #[error("index {index} does not fit the compact format")]
    CompactOverflow { index: usize },
    #[error("strand count must lie in 2..={max}, got {got}")]
    InvalidStrandCount { got: usize, max: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("strand counts differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("word families differ: {left} vs {right}")]
    FamilyMismatch { left: Family, right: Family },
    #[error("expected a {expected} word, got a {got} word")]
    WrongFamily { expected: Family, got: Family },
    #[error("word is not reduced")]
    NotReduced,
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded {
        budget: usize,
        /// Shortest word reached before the search gave up, when meaningful.
        best: Option<Box<Word>>,
    },
    #[error("equality backends disagree on {left} vs {right}")]
    BackendDisagreement { left: String, right: String },
}

pub type Result<T> = std::result::Result<T, Error>;
