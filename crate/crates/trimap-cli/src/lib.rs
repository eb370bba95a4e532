//! Library surface of the trimap driver: configuration, command
//! implementations writing to any `io::Write`, and output encoding. The
//! binary in `main.rs` is a thin argument-parsing wrapper.

pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

use config::ConfigError;

/// Exit codes: 0 clean/criterion-satisfied, 1 I/O, 2 validation,
/// 3 solver failure, 4 criterion-violated, 5 inconclusive.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{0}")]
    BadRequest(String),

    #[error(transparent)]
    Solver(#[from] trimap_dynamics::DynamicsError),

    #[error(transparent)]
    Core(#[from] trimap_core::CoreError),

    #[error(transparent)]
    Model(#[from] trimap_models::ModelError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::BadRequest(_) => 2,
            CliError::Solver(_) | CliError::Core(_) | CliError::Model(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}
