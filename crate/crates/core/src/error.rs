use thiserror::Error;

use crate::tour::Tour;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TspError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("instance has {n} locations, {operation} supports at most {max}")]
    TooLarge {
        operation: &'static str,
        n: usize,
        max: usize,
    },

    /// A run hit its step cap. The best tour seen before the cap is kept.
    #[error("run aborted after {steps} steps (best length {best_length})")]
    RunAborted {
        steps: u64,
        best_tour: Tour,
        best_length: f64,
    },
}

pub type Result<T, E = TspError> = std::result::Result<T, E>;
