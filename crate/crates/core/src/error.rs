use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-side problem:
/// arithmetic itself is exact and never fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0:?}: expected one of a, b, c, d")]
    InvalidLetter(char),

    #[error("word {word:?} is not over the alphabet {expected}")]
    AlphabetMismatch { word: String, expected: &'static str },

    #[error("the empty word has no Stern-Brocot fraction")]
    EmptyWord,

    #[error("cyclotomic order {0} is out of range (supported: {1})")]
    OrderOutOfRange(u32, &'static str),

    #[error("Z[zeta_{k}] needs {expected} coordinates, got {got}")]
    CoordinateLength { k: u32, expected: usize, got: usize },

    #[error("mismatched cyclotomic orders {0} and {1}")]
    MismatchedOrder(u32, u32),

    #[error("letter count {count_b} exceeds word length {len}")]
    CountsOutOfRange { len: u64, count_b: u64 },

    #[error(
        "max_len {max_len} exceeds the safety bound {bound}: {words} words, roughly {est_mib} MiB; raise the bound to proceed"
    )]
    BoundExceeded {
        max_len: usize,
        bound: usize,
        words: u128,
        est_mib: u128,
    },

    #[error("pair ({0}, {1}) is not a collision: the 12-entries differ")]
    NotColliding(String, String),

    #[error("pair ({0}, {0}) is not a pair of distinct words")]
    SameWord(String),

    #[error("({x}, {y}, {z}) is not a Markoff triple")]
    InvalidTriple { x: String, y: String, z: String },
}

pub type Result<T> = std::result::Result<T, Error>;
