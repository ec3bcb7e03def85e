use thiserror::Error;

use crate::partition::Partition;

pub type Result<T> = std::result::Result<T, Error>;

/// All positions and values carried by these variants are 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation")]
    Empty,
    #[error("value {value} at position {index} is out of range 1..={n}")]
    ValueOutOfRange { index: usize, value: usize, n: usize },
    #[error("value {value} at position {index} is repeated")]
    RepeatedValue { index: usize, value: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cycle types differ: ({left}) vs ({right})")]
    CycleTypeMismatch { left: Partition, right: Partition },
    #[error("jump is {jump}, no gap to close")]
    NoGap { jump: i64 },
    #[error("value not attained, maximum is {max}")]
    NotAttained { max: usize },
    #[error("not reached within budget, best lower bound is {best}")]
    NotReached { best: usize },
    #[error("only the identity has des 0")]
    IdentityOnly,
    #[error("budget exceeded: n={n} is above the exhaustive limit {limit}")]
    BudgetExceeded { n: usize, limit: usize },
    #[error("unknown check: {0}")]
    UnknownCheck(String),
    #[error("cache: {0}")]
    Cache(String),
    /// A postcondition failed. Always an implementation defect.
    #[error("internal error: {0}")]
    Internal(String),
}
