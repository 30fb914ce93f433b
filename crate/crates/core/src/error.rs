use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid or mismatched group parameters.
    Params(String),
    /// A vertex, edge or extra label that the parameters do not know.
    Label(String),
    /// A size guard was exceeded. Never a verification failure.
    Budget {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    /// A precondition of an operation was violated by its inputs.
    Contract(String),
    /// An operation needed a subgroup outside the declared family.
    Closure(String),
    /// Malformed text input; `pos` is a byte offset or a 1-based line number
    /// depending on the format.
    Parse { pos: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Params(m) => write!(f, "invalid parameters: {m}"),
            Error::Label(l) => write!(f, "unknown label `{l}`"),
            Error::Budget { what, size, limit } => {
                write!(f, "{what}: size {size} exceeds guard {limit}")
            }
            Error::Contract(m) => write!(f, "contract violation: {m}"),
            Error::Closure(m) => write!(f, "outside declared family: {m}"),
            Error::Parse { pos, msg } => write!(f, "at {pos}: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn budget(what: &'static str, size: impl TryInto<u64>, limit: impl TryInto<u64>) -> Error {
    Error::Budget {
        what,
        size: size.try_into().unwrap_or(u64::MAX),
        limit: limit.try_into().unwrap_or(u64::MAX),
    }
}
