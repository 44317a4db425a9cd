use thiserror::Error;

/// Errors raised by the group, character and block engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("capacity exceeded: {what} (bound {bound})")]
    Capacity { what: String, bound: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("value is not p-integral for p = {0}")]
    NotPIntegral(u64),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("fusion system is incomplete: {0}")]
    Incomplete(String),

    #[error("*-construction is not well defined: {0}")]
    WellDefinedness(String),

    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, bound: u64) -> Self {
        Error::Capacity {
            what: what.into(),
            bound,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
