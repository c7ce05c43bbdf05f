use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),

    #[error("{0} is not a prime")]
    NotAPrime(u64),

    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotSplit(u64),

    #[error("ideal of even norm {0} has no primary generator")]
    EvenNorm(u64),

    #[error("invalid eigenform: {0}")]
    InvalidForm(String),

    #[error("weight {0} must be even and at least 2")]
    InvalidWeight(u32),

    #[error("coefficient source has no a_p for p = {prime}")]
    IncompleteSource { prime: u64 },

    #[error("coefficient table too short: need index {needed}, have {available}")]
    IncompleteTable { needed: usize, available: usize },

    #[error("|lambda| = {lambda} exceeds the Ramanujan bound {bound} at p = {p}")]
    RamanujanViolation { p: u64, lambda: f64, bound: f64 },

    #[error("{what}: {lhs} vs {rhs} disagree beyond tolerance")]
    Inconsistent {
        what: &'static str,
        lhs: f64,
        rhs: f64,
    },

    #[error("factor stream out of order: norm {next} after {previous}")]
    OrderingViolation { previous: u64, next: u64 },

    #[error("reciprocal root of modulus {modulus} > 1 at norm {norm}")]
    Normalization { norm: u64, modulus: f64 },

    #[error("unsupported input: {0}")]
    Unsupported(&'static str),

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("reduction to the fundamental domain did not terminate")]
    ReductionCycle,

    #[error("quadrature error estimate {estimate:e} above requested {requested:e}")]
    AccuracyNotReached { estimate: f64, requested: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
