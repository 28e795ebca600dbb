use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid problem definition: {0}")]
    InvalidProblem(String),

    #[error("dominance tolerance must be finite and non-negative, got {0}")]
    InvalidEpsilon(f64),

    #[error("objective point has a non-finite component ({j1}, {j2})")]
    NonFinite { j1: f64, j2: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("subproblem {k} is infeasible: {reason}")]
    Infeasible { k: usize, reason: String },

    #[error("discrete design space has {size} realizations, above the cap of {cap}")]
    CapacityExceeded { size: u128, cap: u64 },

    #[error("pipeline failed: {0}")]
    Pipeline(String),
}
