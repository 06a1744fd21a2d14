use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (zero vector, n = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The request is well defined but refused: divergent series, oracle too large.
    #[error("refused: {0}")]
    Refused(String),
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
    /// Two independent evaluations of the same exact quantity disagreed.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(what))
    }
}
