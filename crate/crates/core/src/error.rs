use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inputs outside the domain of an operation (nonpositive legs, degenerate chords, ...).
    #[error("{0}")]
    Domain(String),
    /// A recomputed quantity disagreed with its closed form beyond tolerance.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
