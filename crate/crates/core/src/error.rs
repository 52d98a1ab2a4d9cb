use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid genus {0}: surface groups need g >= 2")]
    InvalidGenus(u32),

    #[error("invalid letter {letter}: index must lie in [1, {max}]")]
    InvalidLetter { letter: i64, max: u32 },

    #[error("incompatible words: genus {left} vs genus {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("rule no longer matches: {0}")]
    InvalidRule(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("offset {offset} out of range for word of length {len}")]
    OffsetOutOfRange { offset: usize, len: usize },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    /// A termination guard fired. The reduction measure rules this out, so
    /// seeing it means a bug.
    #[error("non-termination guard fired after {steps} steps: {context}")]
    NonTermination { steps: usize, context: String },

    #[error("internal invariant breached: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
