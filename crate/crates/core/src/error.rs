use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("numerical consistency violated: {0}")]
    NumericalConsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
