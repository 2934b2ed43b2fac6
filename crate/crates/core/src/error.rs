use thiserror::Error;

/// Errors raised by lattice construction, field transforms and norms.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("drift required: lambda must be nonzero")]
    DriftRequired,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },
    #[error("representation mismatch: expected {expected}, found {found}")]
    RepresentationMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("component mismatch: expected {expected} components, found {found}")]
    ComponentMismatch { expected: usize, found: usize },
    #[error("norm exponent must satisfy r >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("parameter mismatch between fields")]
    ParamsMismatch,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
