use thiserror::Error;

/// Errors produced by the solvers and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a documented precondition (bad radius ordering,
    /// non-positive field sample, argument out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An internal invariant was broken; this signals a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),

    /// A floating-point guard tripped (exponent range, weight underflow).
    #[error("numerical guard: {0}")]
    Guard(String),

    /// The grid cannot resolve the requested regime; retry with larger n_grid.
    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }
}
