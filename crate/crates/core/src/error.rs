use thiserror::Error;

use crate::table::GradedDimensionTable;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("negative exponent in non-localized variable `{0}`")]
    NegativeExponent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("group element is not in {0}")]
    NotInGroup(String),

    #[error("input is not homogeneous")]
    NotHomogeneous,

    #[error("square root undefined: {0}")]
    BranchPoint(String),

    #[error("resource guardrail exceeded: {message}")]
    Guardrail {
        message: String,
        partial: Option<Box<GradedDimensionTable>>,
    },

    #[error("cache corruption: {0}")]
    CacheCorrupt(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
