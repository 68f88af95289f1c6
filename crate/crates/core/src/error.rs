use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across the crate. Precondition violations carry enough
/// context to state exactly which contract was broken.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input must be positive")]
    NonPositive,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("{m} is not congruent to {expected} modulo {modulus}")]
    WrongResidue { m: u64, expected: u64, modulus: u64 },
    #[error("{p} divides {m} but belongs to none of the prime classes S1..S4")]
    FactorOutsideS { m: u64, p: u64 },
    #[error("form {a},{b},{c} is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },
    #[error("{0} is not a negative discriminant congruent to 0 or 1 modulo 4")]
    InvalidDiscriminant(i64),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("requested size {requested} exceeds the configured cap {cap}")]
    LimitExceeded { requested: u64, cap: u64 },
    #[error("exact count exceeds 64 bits; use the parity stream for parity at this size")]
    CountOverflow,
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("recurrence bounds violated: need 0 <= t0 <= t <= {max}, got t0={t0}, t={t}")]
    RecurrenceBounds { t0: u32, t: u32, max: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
