use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid model or function parameters.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Argument outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Operation not supported for the given kind.
    #[error("capability error: {0}")]
    Capability(String),

    /// A numerical routine failed to reach its target accuracy.
    #[error("numerics error: {msg} (achieved tolerance {achieved:.3e})")]
    Numerics { msg: String, achieved: f64 },

    /// Shell sums failed to settle; the improper integral looks divergent.
    #[error("divergence suspected: {0}")]
    DivergenceSuspected(String),

    /// A regime/model precondition of a theorem-backed evaluator failed.
    #[error("precondition error: {0}")]
    Precondition(String),

    /// Experiment configuration is malformed.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
