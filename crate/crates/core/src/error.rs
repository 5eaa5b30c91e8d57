use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set must be non-empty")]
    EmptyGroundSet,

    #[error("not a permutation of 1..={n}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("size mismatch: permutation on [{left}] vs permutation on [{right}]")]
    SizeMismatch { left: usize, right: usize },

    #[error("restriction size {m} outside 1..={n}")]
    BadRestriction { m: usize, n: usize },

    #[error("need at least {min} permutations, got {k}")]
    TooFewPermutations { k: usize, min: usize },

    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),

    #[error("no supported Hadamard construction for order {0}")]
    UnsupportedOrder(usize),

    #[error("size {size} exceeds cap {cap}")]
    TooLarge { size: u128, cap: u64 },

    #[error("duplicate sort key for j={j}: elements {a} and {b}")]
    DuplicateKey { j: u64, a: usize, b: usize },

    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
