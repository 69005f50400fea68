use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by every public operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid parameters or an inconsistent model/experiment configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The requested operation is not defined for this family or model shape.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The model does not have the shape an estimator was written for.
    #[error("shape error: {0}")]
    Shape(String),

    /// A denominator or probability vanished below representable precision.
    #[error("numeric underflow: {0}")]
    Underflow(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("config parse error: {0}")]
    Parse(String),

    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
