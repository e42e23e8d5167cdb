//! Crate-wide error type.

/// Errors raised by the numerical operators and runners.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A weight profile cannot support the requested fractional order.
    #[error("invalid weight profile: {0}")]
    InvalidProfile(String),

    /// Input data failed validation (non-finite samples, mismatched shapes).
    #[error("input error: {0}")]
    Input(String),

    /// An integrand was detected to be non-integrable.
    #[error("integrability error: {0}")]
    Integrability(String),

    /// Internal bookkeeping broke an invariant.
    #[error("internal error: {0}")]
    Internal(String),

    /// Scenario configuration failed to parse or validate.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
