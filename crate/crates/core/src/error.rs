use thiserror::Error;

/// Errors raised by the simulation and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A quantity that must be real (or finite) by construction was not.
    #[error("numerical consistency violated: {0}")]
    NumericalConsistency(String),

    /// The objective handed to the optimizer returned a non-finite value.
    #[error("objective evaluation failed: {0}")]
    Evaluation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
