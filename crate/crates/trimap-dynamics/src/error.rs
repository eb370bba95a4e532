use thiserror::Error;
use trimap_core::CoreError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("search box must have finite bounds on every axis")]
    UnboundedSearchBox,

    #[error("grid density must be at least 2 per axis, got {got}")]
    GridTooCoarse { got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("tolerance must be positive, got {got}")]
    BadTolerance { got: f64 },

    #[error("target period must be at least 1")]
    ZeroTargetPeriod,
}
