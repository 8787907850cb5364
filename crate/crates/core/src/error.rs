//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The working precision cannot represent the requested quantity.
    /// `index` is the first matrix size / recurrence index that failed.
    #[error("precision exhausted in {context} at n = {index}")]
    PrecisionExhausted { context: &'static str, index: usize },

    #[error("matrix factorization failed at pivot {pivot}: insufficient precision")]
    FactorizationFailed { pivot: usize },

    #[error("ODE step size collapsed near x = {x} (h = {h:e})")]
    StepSizeCollapse { x: f64, h: f64 },

    #[error("ODE solution blow-up near x = {x}")]
    Blowup { x: f64 },

    #[error("distribution grid does not resolve the tails: {0}")]
    UnresolvedTails(String),

    #[error("quantile p = {p} outside the resolved range ({lo}, {hi})")]
    QuantileOutOfRange { p: f64, lo: f64, hi: f64 },

    #[error("enumeration too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
