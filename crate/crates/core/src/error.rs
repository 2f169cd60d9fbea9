use thiserror::Error;

/// Errors raised by field arithmetic, linear algebra, code analysis and the
/// constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{q} is not a prime power ({factorization})")]
    NotPrimePower { q: u64, factorization: String },
    #[error("field order {0} is outside the supported range 2..=65536")]
    UnsupportedOrder(u64),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("element {value} is not in GF({q})")]
    InvalidElement { value: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    Precondition(String),
    #[error("minimum distance is undefined for a code of dimension 0")]
    UndefinedDistance,
    #[error("locality undefined: coordinate {0} is not covered by any dual codeword")]
    LocalityUndefined(usize),
    #[error("locality violation: coordinate {coordinate} has no recovery set of size <= {max_size}")]
    LocalityViolation { coordinate: usize, max_size: usize },
    #[error("locality mismatch: expected {expected}, computed {actual}")]
    LocalityMismatch { expected: usize, actual: usize },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("distance oracles disagree: codeword enumeration gave {codewords}, column subsets gave {columns}")]
    OracleMismatch { codewords: usize, columns: usize },
    #[error("Singleton-type bound violated by {0}; the computed d, k or r is wrong")]
    SingletonViolation(i64),
    #[error("repair failed: {0}")]
    Repair(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
