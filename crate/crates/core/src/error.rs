//! Crate-wide error type.

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A structural invariant is violated (bad tables, unknown names, empty loop, ...).
    #[error("{0}")]
    Invalid(String),

    /// A construction was refused because its output would exceed a size guard.
    #[error("size cap exceeded computing {what}: needs {needed} elements, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True when the error is a size-guard refusal rather than bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
