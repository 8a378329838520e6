use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("dimension mismatch: expected {expected} nodes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),

    #[error("no closed-form ages for this topology: {0}")]
    UnsupportedTopology(String),

    #[error("exhaustive enumeration refused: {n} nodes exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("no AC-stable profile")]
    NoStableProfile,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid cost function: {0}")]
    InvalidCost(String),
}
