use thiserror::Error;

/// Errors raised while constructing or evaluating triangular systems.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Evaluation produced NaN or infinity; `coordinate` is 1-based.
    #[error("non-finite value produced in coordinate {coordinate}")]
    NonFinite { coordinate: usize },

    /// A point violated the domain box; `coordinate` is 1-based.
    #[error("point outside the domain box in coordinate {coordinate}")]
    OutOfDomain { coordinate: usize },

    #[error("coordinate period list is empty")]
    EmptyPeriods,

    #[error("coordinate period must be at least 1")]
    ZeroPeriod,

    #[error("system stores {stored} maps but lcm of coordinate periods is {lcm}")]
    PeriodLengthMismatch { stored: usize, lcm: usize },

    #[error("phase {phase} out of range for period {period}")]
    InvalidPhase { phase: usize, period: usize },

    #[error("composition window length must be at least 1")]
    EmptyWindow,

    #[error("coordinate map at slot {slot} carries index {index}, expected {expected}")]
    MisplacedCoordinate {
        slot: usize,
        index: usize,
        expected: usize,
    },

    #[error("coordinate {index} supplies {count} partial derivatives, expected {index}")]
    PartialArity { index: usize, count: usize },

    #[error("invalid interval [{lo}, {hi}] in domain box")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("maps of a system must share one domain box")]
    MixedDomains,

    #[error("system has no maps")]
    EmptySystem,
}
