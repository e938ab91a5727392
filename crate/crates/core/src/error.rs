//! Error type shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is invalid: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("x = {x} lies outside the support [{lower}, {upper}]")]
    OutsideSupport { x: f64, lower: f64, upper: f64 },

    #[error("probability {p} outside [0, 1]")]
    InvalidProbability { p: f64 },

    #[error("parameter index {index} out of range ({count} parameters)")]
    ParamIndex { index: usize, count: usize },

    #[error("order statistic indices invalid: i = {i}, n = {n}")]
    OrderIndex { i: usize, n: usize },

    #[error("integral did not converge: {0}")]
    IntegralDiverged(String),

    #[error("moment of order {order} does not exist (estimated tail exponent {tail:.3})")]
    MomentDoesNotExist { order: u32, tail: f64 },

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("fitted cdf degenerate at a data point (F = {value})")]
    BoundaryDegeneracy { value: f64 },

    #[error("unknown name `{0}`")]
    UnknownName(String),
}
