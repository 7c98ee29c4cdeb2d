use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero vector has no projective class")]
    ZeroVector,

    #[error("n = {n} is not supported here ({reason})")]
    InvalidN { n: usize, reason: &'static str },

    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("generator indices must be distinct, got ({0}, {1}, {2})")]
    RepeatedIndex(usize, usize, usize),

    #[error("K-positive side not supported (v.K = {0})")]
    KPositive(BigInt),

    #[error("halfspace normal must have negative square, found u.u = {0}")]
    NonNegativeNormal(BigInt),

    #[error("cone is not pointed: the normals span a subspace of rank {rank} < {dim}")]
    NotPointed { rank: usize, dim: usize },

    #[error("polytope is not Coxeter; offending pairs {0:?}")]
    NotCoxeter(Vec<(usize, usize)>),

    #[error("degree-0 classes have no cubic/conic decomposition")]
    DegreeZero,

    #[error("{0} is not a (-1)-class")]
    NotMinusOneClass(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}
