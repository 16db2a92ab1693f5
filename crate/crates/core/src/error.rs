use thiserror::Error;

/// Errors raised by the geometry, code and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field of size {size} exceeds the table limit {limit}")]
    FieldTooLarge { size: u64, limit: u64 },
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} does not lie in the base field GF(q)")]
    NotInBaseField(u32),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("budget exceeded: {needed} > {budget} ({what})")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },
    #[error("the two points coincide")]
    IdenticalPoints,
    #[error("the all-zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("the zero matrix does not define a Hermitian variety")]
    ZeroMatrix,
    #[error("point is not on the variety")]
    PointNotOnVariety,
    #[error("point is a singular point of the variety")]
    SingularPoint,
    #[error("unsupported variety: {0}")]
    UnsupportedVariety(String),
    #[error("degree {d} exceeds q = {q}")]
    DegreeTooLarge { d: u32, q: u64 },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("empty list of hyperplanes")]
    EmptyHyperplaneList,
    #[error("extremal configuration not found: {0}")]
    ConfigurationNotFound(String),
    #[error("invalid shard {index}/{total}")]
    InvalidShard { index: u64, total: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
