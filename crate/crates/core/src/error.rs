use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty window: min degree {min} exceeds max degree {max}")]
    EmptyWindow { min: i64, max: i64 },

    #[error("degree range {start}..{end} is not strictly inside the valid window [{min}, {max}]")]
    RangeOutsideWindow { start: i64, end: i64, min: i64, max: i64 },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("result of rank {rank} exceeds the window's max rank {max_rank}")]
    RankOverflow { rank: usize, max_rank: usize },

    #[error("result of degree {degree} lies outside the known degrees of rank {rank}")]
    DegreeTruncated { rank: usize, degree: i64 },

    #[error("slot {slot} is out of range for an element of rank {rank}")]
    BadSlot { slot: usize, rank: usize },

    #[error("basis cap exceeded: {count} elements requested, cap is {cap}")]
    BasisCap { count: usize, cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
