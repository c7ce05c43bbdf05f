//! Rational primes and prime ideals of `Z[i]`, in increasing norm.

mod gaussian;
mod sieve;

pub use gaussian::{
    cornacchia_two_squares, gaussian_ideals_by_norm, GaussianIdeal, GaussianInt, IdealStream,
    Splitting,
};
pub use sieve::{rational_primes, smallest_prime_factors, PrimeStream};
