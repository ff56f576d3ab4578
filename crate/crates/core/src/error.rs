use thiserror::Error;

/// Errors raised by the geometry, operator and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector must have at least one coordinate")]
    EmptyVector,

    #[error("non-finite value at coordinate {index}")]
    NonFinite { index: usize },

    #[error("invalid convex set: {0}")]
    InvalidSet(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error(
        "certificate unsolvable: need r > gamma*mu^2, got r = {r}, gamma*mu^2 = {relaxation} \
         (effective modulus {modulus})"
    )]
    Unsolvable {
        r: f64,
        relaxation: f64,
        modulus: f64,
    },

    #[error("step {step} outside the admissible window (0, {bound})")]
    StepOutOfWindow { step: f64, bound: f64 },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("operator produced a non-finite value at iteration {iteration}")]
    NonFiniteIterate { iteration: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
