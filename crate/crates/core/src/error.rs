use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QwalkError {
    #[error("degenerate coin: theta = {0} makes the walk trivial")]
    DegenerateCoin(f64),

    #[error("angle out of range: {value} (expected {expected})")]
    AngleOutOfRange { value: f64, expected: &'static str },

    #[error("initial coin state is the zero vector and cannot be normalized")]
    ZeroState,

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("support would leave window (half-width {half_width}, time {time})")]
    WindowOverflow { half_width: usize, time: usize },

    #[error("quadrature did not converge: error estimate {estimate:e} above target {target:e}")]
    QuadratureNonConvergence { estimate: f64, target: f64 },

    #[error("degenerate momentum point ({a}, {b}): {what}")]
    DegenerateMomentum { a: f64, b: f64, what: &'static str },

    #[error("moment order ({r1}, {r2}) is not supported (total order must be at most {max})")]
    MomentOrder { r1: u32, r2: u32, max: u32 },

    #[error("dense matrix cap exceeded: {requested} steps requested, cap is {cap}")]
    DenseCapExceeded { requested: usize, cap: usize },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("invalid coin matrix: {0}")]
    InvalidCoin(String),
}

pub type Result<T> = std::result::Result<T, QwalkError>;
