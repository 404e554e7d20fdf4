//! Crate-wide error type.  Hard internal invariant violations (exact division
//! failing, dual-route mismatches) panic instead: they indicate kernel bugs,
//! not bad input.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("plethystic product over a character containing the unit monomial")]
    UnitMonomial,
    #[error("pole at sample point")]
    PoleAtSample,
    #[error("cell ({0},{1}) lies outside the shape")]
    CellOutside(usize, usize),
    #[error("not a partition: {0}")]
    BadPartition(String),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("index {index} out of range for k={k}")]
    IndexRange { index: usize, k: usize },
    #[error("operator maps out of the allowed grade range: {0}")]
    GradeError(String),
    #[error("word step {step}: {msg}")]
    WordStep { step: usize, msg: String },
    #[error("vector is in basis {found} but {expected} is required")]
    WrongBasis {
        expected: &'static str,
        found: &'static str,
    },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("slope ({0},{1}) is not coprime")]
    NotCoprime(i64, i64),
    #[error("degree budget exceeded: needed {needed}, cap {cap}")]
    DegreeBudget { needed: u32, cap: u32 },
    #[error("singular linear system: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
