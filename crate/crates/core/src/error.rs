use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument falls outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A checked arithmetic operation overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// A size or memory limit was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A witness failed its own invariants.
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("report format error on {path}: {message}")]
    Format { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
