use thiserror::Error;

use crate::algebra::AlgebraDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot combine an element of {left} with an element of {right}")]
    MixedAlgebra {
        left: AlgebraDescriptor,
        right: AlgebraDescriptor,
    },

    #[error("{0} has an infinite carrier; use a sample grid instead")]
    InfiniteCarrier(AlgebraDescriptor),

    #[error("invalid element {text:?} for algebra {algebra}: {reason}")]
    InvalidElement {
        algebra: AlgebraDescriptor,
        text: String,
        reason: String,
    },

    #[error("unknown algebra {0:?} (expected bool2, kleene3, four or fuzzy)")]
    UnknownAlgebra(String),

    #[error("invalid port name {name:?}: {reason}")]
    InvalidPort { name: String, reason: String },

    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("formula mentions port `{0}` which is not declared")]
    UnknownPort(String),

    #[error("{0}")]
    Domain(String),

    #[error("invalid interaction: {0}")]
    InvalidInteraction(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
