use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid polylogarithm index (j={j}, k={k}, r={r}): need 1 <= j <= k and r >= 1")]
    InvalidIndex { j: u32, k: u32, r: u32 },

    #[error("order r={0} is not supported here")]
    UnsupportedOrder(u32),

    #[error("x={x} is within {tolerance:e} of the singular point {point}")]
    Singular { x: f64, point: f64, tolerance: f64 },

    #[error("depth parameter must be positive and finite, got {0}")]
    InvalidDepth(f64),

    #[error("wavenumber must be nonzero")]
    ZeroWavenumber,

    #[error("invalid rational time {p}/{q}")]
    InvalidTime { p: u64, q: u64 },

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
