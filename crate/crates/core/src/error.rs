use thiserror::Error;

use crate::lattice::LatticeDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("classes live in different lattices ({0} vs {1})")]
    LatticeMismatch(LatticeDescriptor, LatticeDescriptor),

    #[error("coefficient vector has length {got}, lattice rank is {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("{what} is odd ({value}); not a valid class under adjunction")]
    Parity { what: &'static str, value: i64 },

    #[error("reflection root must have self-intersection -2, got {0}")]
    NotARoot(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("transformation not admissible for this vector: {0}")]
    NotAdmissible(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("invalid data: {0}")]
    Invalid(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("search budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}
