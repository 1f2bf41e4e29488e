use thiserror::Error;

/// Errors raised by word, permutation, enumeration and series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {token:?}: expected a nonnegative decimal integer")]
    InvalidLetter { token: String },

    #[error("invalid index set {text:?}")]
    InvalidIndexSet { text: String },

    #[error("position {pos} out of range for a word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("letter {letter} at position {pos} equals its reduced position (neutral letter)")]
    NeutralLetter { pos: usize, letter: u32 },

    #[error("positive subword {pos_word:?} is not a derangement")]
    NotADerangement { pos_word: String },

    #[error("zero index {l} out of range 1..={len}")]
    ZeroIndexOutOfRange { l: usize, len: usize },

    #[error("word has no zero letter")]
    NoZero,

    #[error("{prefix:?} is not a nonempty left factor of {context:?}")]
    NotALeftFactor { prefix: String, context: String },

    #[error("last letter must be 0")]
    LastLetterNotZero,

    #[error("first letter must be 0")]
    FirstLetterNotZero,

    #[error("word ends in 0 but is not all zeros")]
    TrailingZero,

    #[error("word starts with 0 but is not all zeros")]
    LeadingZero,

    #[error("{values:?} is not a permutation of 1..=n")]
    NotAPermutation { values: String },

    #[error("word {word:?} is not the image of a permutation (positive subword must be a derangement)")]
    NotInSnDer { word: String },

    #[error("positive subword must consist of positive letters, found 0")]
    ZeroInPositiveWord,

    #[error("word of length {m} cannot sit in a shuffle class of length {n}")]
    ClassTooShort { m: usize, n: usize },

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("unknown statistic {name:?}")]
    UnknownStat { name: String },

    #[error("unknown claim {name:?}")]
    UnknownClaim { name: String },

    #[error("coefficient overflow in series arithmetic")]
    Overflow,

    #[error("series inversion needs constant term 1 and every other term capped: {reason}")]
    NonUnit { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
