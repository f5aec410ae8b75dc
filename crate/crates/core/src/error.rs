use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} must be an odd prime (got {value})")]
    NotOddPrime { name: &'static str, value: u64 },

    #[error("p and q must be distinct (both are {0})")]
    EqualPrimes(u64),

    #[error("period p*q = {p}*{q} exceeds the supported maximum 2^31")]
    PeriodTooLarge { p: u64, q: u64 },

    #[error("index {index} out of range for period {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("group ring orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid (a,b,c) triple {0:?}: expected three characters from {{0,1}}")]
    InvalidTriple(String),

    #[error("invalid prime pair {0:?}: expected P:Q")]
    InvalidPair(String),

    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
