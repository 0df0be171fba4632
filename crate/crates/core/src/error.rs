use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    Zero,
    #[error("factorization effort budget exhausted on cofactor {0}")]
    ResourceLimit(String),
    #[error("{value} exceeds the oracle cap {cap}")]
    OracleCap { value: String, cap: u64 },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("malformed factorization: {0}")]
    Factorization(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inputs are not coprime: gcd = {0}")]
    NotCoprime(String),
    #[error("premise not satisfied: {0}")]
    Premise(String),
    #[error(
        "exponent {limit} is beyond the desk-scale cap {cap}; pass the override to scan further"
    )]
    ScanCap { limit: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
