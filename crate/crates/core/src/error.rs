use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("root of unity of order {needed} is not available in the cyclotomic field of order {order}")]
    OrderMismatch { needed: String, order: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("element is not an N-th root of unity (N = {order}); residual x^N - 1 = {residual}")]
    NotRootOfUnity { order: u32, residual: String },

    #[error("generator U is not central for this action: {0}")]
    NotCentral(String),

    #[error("inconsistent data: {0}")]
    InconsistentData(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
