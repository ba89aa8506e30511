use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("closure has {components} components; only knots are supported")]
    MultiComponent { components: usize },

    #[error("tensor dimension {dim} exceeds the configured cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("operands live over different scalar backends")]
    MixedBackends,

    #[error("strand mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("convention error: {0}")]
    Convention(String),

    #[error("non-scalar action on {module}: {detail}")]
    NonScalarAction { module: String, detail: String },

    #[error("numeric precision exhausted: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
