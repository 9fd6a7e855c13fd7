use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants fall in three families: malformed input (`Decode`, `OutOfBounds`,
/// `InvalidSupport`, ...), violated preconditions of a construction
/// (`NotRegular`, `EpsilonTooLarge`, `WrongRegime`, ...) and resource limits
/// (`Size`). [`Error::is_precondition`] tells the second family apart, which
/// the CLI maps to its own exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot decode letter {found:?} at position {position} for an alphabet of size {alphabet}")]
    Decode {
        position: usize,
        found: String,
        alphabet: u32,
    },
    #[error("letter {letter} at position {position} is outside an alphabet of size {alphabet}")]
    LetterOutOfRange {
        position: usize,
        letter: u32,
        alphabet: u32,
    },
    #[error("invalid alphabet size {0}")]
    InvalidAlphabet(u32),
    #[error("position {index} is out of range for a word of length {len}")]
    OutOfBounds { index: usize, len: usize },
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("density of the empty word is undefined")]
    EmptyWord,
    #[error("invalid epsilon {0}: must be a rational strictly between 0 and 1")]
    InvalidEpsilon(String),
    #[error("epsilon is too small for a word of length {len}: the smallest usable value is {min_epsilon}")]
    EpsilonTooSmall { len: usize, min_epsilon: String },
    #[error("epsilon is too large: {0}")]
    EpsilonTooLarge(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("witness does not certify irregularity: {0}")]
    WitnessMismatch(String),
    #[error("refinement gains {gain} < epsilon^3 = {required} after integer rounding")]
    InsufficientIncrement { gain: String, required: String },
    #[error("word is not {0}-regular; regularize it first")]
    NotRegular(String),
    #[error("unsupported alphabet: {0}")]
    UnsupportedAlphabet(String),
    #[error("wrong regime: {0}")]
    WrongRegime(String),
    #[error("word of length {len} is too short to split into {parts} non-empty factors")]
    TooShort { len: usize, parts: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("size limit exceeded: {0}")]
    Size(String),
}

impl Error {
    /// True for errors that mean "the input does not satisfy the operation's
    /// precondition" rather than "the input is malformed".
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotRegular(_)
                | Error::EpsilonTooLarge(_)
                | Error::EpsilonTooSmall { .. }
                | Error::WrongRegime(_)
                | Error::UnsupportedAlphabet(_)
                | Error::TooShort { .. }
                | Error::Infeasible(_)
                | Error::EmptyWord
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
