use thiserror::Error;

use crate::channel::ClassTag;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operation requires a {expected} channel, got {actual:?}")]
    ClassMismatch { expected: &'static str, actual: ClassTag },

    #[error("invalid power split: {0}")]
    InvalidSplit(String),

    #[error("region is unbounded: need a constraint limiting each rate")]
    UnboundedRegion,

    #[error("region is empty: constraint {index} has rhs {rhs} < 0")]
    EmptyRegion { index: usize, rhs: f64 },

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    /// The inner region pokes outside the outer region; for an achievable
    /// region against a valid outer bound this means a formula is wrong.
    #[error("inner region vertex ({r1}, {r2}) lies outside the outer region")]
    Containment { r1: f64, r2: f64 },

    #[error("alpha = {0} is not covered: no asymptotically tight scheme on [2/3, 1]")]
    NotCovered(f64),
}
