//! Crate-wide error type.
//!
//! Operations distinguish three failure classes: invalid parameters (the
//! caller's inputs violate a documented precondition), exhausted budgets
//! (the request is well-formed but would enumerate or sample more work than
//! the configured cap), and internal errors (a numeric routine failed to
//! converge or an arithmetic guard tripped; these indicate a bug).

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The operation would exceed a work budget. `required` reports how much
    /// of the named resource the request needs, so callers can decide whether
    /// to retry with a larger explicit budget.
    #[error("budget exceeded: {what} needs {required}, budget is {budget}")]
    Budget {
        /// Human-readable name of the exhausted resource (tuples, grid cells, ...).
        what: &'static str,
        /// Work the request would require.
        required: u128,
        /// Configured cap that was hit.
        budget: u128,
    },

    /// An internal routine failed; this is a bug, not a usage error.
    #[error("internal error: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a parameter error with a formatted message.
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
