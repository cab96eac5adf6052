use thiserror::Error;

use crate::solver::MuResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Ground sets are stored in one machine word.
    #[error("ground set of size {0} exceeds the supported maximum of 64")]
    GroundTooLarge(u64),

    #[error("element {element} lies outside the ground set [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },

    #[error("level mismatch: expected {expected}-subsets, found a {found}-subset")]
    LevelMismatch { expected: u32, found: u32 },

    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: u32, right: u32 },

    #[error("family is empty")]
    EmptyFamily,

    #[error("family is not compressed")]
    NotCompressed,

    #[error("{k} is not a critical cardinality for level {m}")]
    NotCritical { k: u64, m: u32 },

    /// The search stopped at its node budget. The carried result is the best
    /// family found so far and is an upper bound only.
    #[error("search budget of {budget} nodes exhausted; best upper bound is {}", .best.mu)]
    Inconclusive { budget: u64, best: Box<MuResult> },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
