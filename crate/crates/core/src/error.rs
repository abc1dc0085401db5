use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: unknown labels, non-antisymmetric relations,
    /// unparsable permutations, group elements that are not automorphisms.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The instance exceeds a configured size bound.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A theorem's hypothesis does not hold for the given instance.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An internal consistency check failed; this signals a bug or a
    /// counterexample, never bad input.
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
