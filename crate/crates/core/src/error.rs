use alloc::string::String;
use core::fmt;

/// Errors raised by the engine.
///
/// `Falsified` is reserved for an instance check of a cited group-theoretic
/// statement failing; callers must treat it as fatal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    IndexOutOfRange { index: u32, rank: u32 },
    RankMismatch { left: u32, right: u32 },
    Parse { position: usize, token: String, reason: &'static str },
    Precondition(String),
    Unsupported(String),
    Falsified { axiom: &'static str, detail: String },
    Stall(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Error {
        Error::Precondition(msg.into())
    }

    pub fn falsified(axiom: &'static str, detail: impl Into<String>) -> Error {
        Error::Falsified { axiom, detail: detail.into() }
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Error::Falsified { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, rank } => {
                write!(f, "generator index {index} exceeds alphabet rank {rank}")
            }
            Error::RankMismatch { left, right } => {
                write!(f, "alphabet rank mismatch: {left} vs {right}")
            }
            Error::Parse { position, token, reason } => {
                write!(f, "parse error at position {position} (token `{token}`): {reason}")
            }
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported query: {m}"),
            Error::Falsified { axiom, detail } => {
                write!(f, "instance check of {axiom} failed: {detail}")
            }
            Error::Stall(m) => write!(f, "descent stalled: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
