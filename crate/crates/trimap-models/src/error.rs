use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("parameter {name} = {value} violates constraint: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("rate sequence for coordinate {coordinate} is empty")]
    EmptyRates { coordinate: usize },

    #[error("dimension {k} needs {} interaction weights, got {got}", k - 1)]
    InteractionArity { k: usize, got: usize },

    #[error(transparent)]
    Dynamics(#[from] trimap_dynamics::DynamicsError),

    #[error(transparent)]
    Core(#[from] trimap_core::CoreError),
}
