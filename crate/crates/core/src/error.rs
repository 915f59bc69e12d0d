use thiserror::Error;

/// Failure modes shared by every layer of the library.
///
/// The variants line up with the CLI exit codes: input problems, negative
/// mathematical answers, resource caps and internal invariant violations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Rejected(String),
    #[error("resource_cap: {0}")]
    ResourceCap(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Rejected(_) => 2,
            Error::ResourceCap(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
