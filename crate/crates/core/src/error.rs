use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller broke a precondition (shape mismatch, algebra mismatch, non-projective input...).
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("unsupported characteristic: need p > dim, got p = {p} with dim = {dim}")]
    UnsupportedCharacteristic { p: u64, dim: usize },
    #[error("algebra is not split over the prime field: {0}")]
    NotSplit(String),
    #[error("presentation is not admissible: {0}")]
    NonAdmissible(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("no minimal faithful module: {0}")]
    NoMinimalFaithful(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Guard failures that indicate the input exceeds what the exact methods support.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::UnsupportedCharacteristic { .. } | Error::NotSplit(_) | Error::Internal(_))
    }
}
