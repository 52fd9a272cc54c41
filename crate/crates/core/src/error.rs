use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {images:?}")]
    NotAPermutation { n: usize, images: Vec<usize> },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("word letter {letter} out of range 1..={max}")]
    LetterOutOfRange { letter: usize, max: usize },
    #[error("clan parse error at position {position}: {message}")]
    ClanParse { position: usize, message: String },
    #[error("clan is not matchless: {clan}")]
    NotMatchless { clan: String },
    #[error("rank pair indices require i < j, got i={i}, j={j}")]
    BadRankPair { i: usize, j: usize },
    #[error("enumeration capped at p+q <= {cap}, got p+q = {got}")]
    EnumerationTooLarge { cap: usize, got: usize },
    #[error("subword does not belong to the given word")]
    MismatchedSubword,
    #[error("subwords have different parent words")]
    MismatchedParents,
    #[error("matrix is singular, not a flag basis")]
    SingularMatrix,
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("empty input")]
    EmptyInput,
    #[error("invalid rational literal: {0}")]
    BadRational(String),
    #[error("subset contains a point not in the input set")]
    SubsetNotContained,
}

pub type Result<T> = std::result::Result<T, Error>;
