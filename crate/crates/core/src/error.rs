use thiserror::Error;

/// Errors raised by the word, action and subshift routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} = {requested} exceeds the configured cap of {cap}")]
    SizeLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("invalid letter {0:?}; expected one of a, B, C, D")]
    InvalidLetter(char),

    #[error("invalid generator {0:?}; expected one of a, b, c, d")]
    InvalidGenerator(char),

    #[error("invalid bit {0:?}; expected 0 or 1")]
    InvalidBit(char),

    #[error("word {0:?} is not a-alternating")]
    NotAlternating(String),

    #[error("star position {star} outside [0, {len}]")]
    StarOutOfRange { star: usize, len: usize },

    #[error("malformed starred word {0:?}: expected exactly one '*'")]
    MalformedStarredWord(String),

    #[error("index {index} outside [0, {bound}]")]
    OutOfRange { index: usize, bound: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("window margin exhausted: {0}")]
    MarginExhausted(String),

    #[error("group word {0} does not fix the first two tree levels")]
    NotLevelTwoTrivial(String),

    #[error("stabilizer reconstruction failed: {0}")]
    ReconstructionFailure(String),

    #[error("vertex set not closed under the generators: {generator} maps {from} to {missing}")]
    NotClosed {
        from: String,
        generator: char,
        missing: String,
    },

    #[error("subshifts are not disjoint; common word {0:?}")]
    NotDisjoint(String),

    #[error("empty subshift: {0}")]
    EmptySubshift(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::SizeLimit {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
