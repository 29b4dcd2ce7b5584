use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    /// A structure or document fails validation; `path` locates the entry.
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A precondition on an input structure does not hold.
    #[error("rejected: {0}")]
    Rejected(String),
}

impl Error {
    pub fn invalid(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Invalid {
            path: path.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
