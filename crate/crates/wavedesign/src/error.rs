use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("entry {index} has magnitude {magnitude}, not unit modulus")]
    NotUnimodular { index: usize, magnitude: f64 },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("initial objective is zero; the start point is already optimal")]
    ZeroInitialObjective,

    #[error("power iteration did not settle after {iterations} iterations (estimate {estimate}, residual {residual})")]
    PowerIteration {
        iterations: usize,
        estimate: f64,
        residual: f64,
    },

    #[error("dense size guard exceeded: M*P = {mp} > {limit}")]
    SizeGuard { mp: usize, limit: usize },

    #[error("bound needs at least two waveforms, got M = {0}")]
    BoundUndefined(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape(expected: impl ToString, found: impl ToString) -> Error {
    Error::Shape {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
