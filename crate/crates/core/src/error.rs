use thiserror::Error;

/// Errors raised by the library and mapped onto CLI exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The caller supplied data outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An R-matrix was evaluated at one of its poles.
    #[error("R-matrix is singular at u = {0}")]
    Singularity(String),

    /// A ZQ window was too short to hold the support of an injective module.
    #[error("window [{lo}, {hi}] is too small: module reaches degree {hi}, resize needed")]
    WindowTooSmall { lo: i64, hi: i64 },

    /// An exactness or uniqueness assertion failed; this signals a bug or a
    /// counterexample, never bad input.
    #[error("consistency failure: {0}")]
    Consistency(String),

    /// Exchange-graph exploration stopped at the seed cap.
    #[error("exchange graph exceeded the cap of {0} seeds (infinite or large cluster type)")]
    CapExceeded(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn inconsistent<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}
