use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter outside the model's domain (e.g. `a = 0`, `p = 1`, `K < 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive enumeration or region construction would exceed its cap.
    #[error("capacity error: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    /// Malformed input: bad graph literal, inconsistent config, violated precondition.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Process exit status for the command-line tool: 1 validation, 2 capacity, 3 runtime.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Invalid(_) | Error::Unsupported(_) => 1,
            Error::Capacity { .. } => 2,
            Error::Io(_) | Error::Serde(_) => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
