use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("alphabet mismatch: expected n = {expected}, got n = {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("symbol {symbol} at position {position} is outside 1..={n}")]
    SymbolOutOfRange { symbol: usize, position: usize, n: usize },
    #[error("word must not be empty")]
    EmptyWord,
    #[error("not a permutation of 1..={n}: {images:?}")]
    NotAPermutation { n: usize, images: Vec<usize> },
    #[error("n = {n} exceeds the exhaustive limit of {limit}")]
    TooLargeForExhaustive { n: usize, limit: usize },
    #[error("sampled check needs at least one trial")]
    NoTrials,
    #[error("no stored word for n = {n} (lookup covers 1..=7)")]
    LookupUnavailable { n: usize },
    #[error("word is not complete: permutation {missing} does not embed")]
    IncompleteWord { missing: String },
    #[error("matrix dimension {dim} is outside 1..=8")]
    DimensionOutOfRange { dim: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gate index {index} out of range for {count} gates")]
    GateIndexOutOfRange { index: usize, count: usize },
    #[error("control program has {found} bits, network has {expected} switches")]
    ProgramLength { expected: usize, found: usize },
    #[error("network has {switches} switches, enumeration is limited to {limit}")]
    TooManySwitches { switches: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}
