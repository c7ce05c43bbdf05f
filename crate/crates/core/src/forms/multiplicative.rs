use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CoefficientTable, EigenformSpec, FormSource};
use crate::primes::smallest_prime_factors;
use crate::{Error, Result};

/// Anything that can hand out `a_p` at a prime.
pub trait PrimeCoefficients {
    fn coefficient_at_prime(&self, p: u64) -> Option<BigInt>;
}

impl<F> PrimeCoefficients for F
where
    F: Fn(u64) -> Option<BigInt>,
{
    fn coefficient_at_prime(&self, p: u64) -> Option<BigInt> {
        self(p)
    }
}

impl PrimeCoefficients for CoefficientTable {
    fn coefficient_at_prime(&self, p: u64) -> Option<BigInt> {
        self.get(p as usize).cloned()
    }
}

/// Fills `a_1..=a_max_n` from prime coefficients.
///
/// Good primes follow `a_{p^{k+1}} = a_p a_{p^k} − p^{κ−1} a_{p^{k−1}}`, primes
/// dividing the level follow `a_{p^k} = a_p^k`, and coprime indices multiply.
/// For the conductor 32 curve `a_2` is 0 and the source is not consulted.
pub fn extend_multiplicative(
    source: &dyn PrimeCoefficients,
    spec: &EigenformSpec,
    max_n: usize,
) -> Result<CoefficientTable> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let spf = smallest_prime_factors(max_n);
    let mut a: Vec<BigInt> = vec![BigInt::zero(); max_n + 1];
    a[1] = BigInt::one();
    // n with every factor of spf(n) removed
    let mut coprime_part = vec![1usize; max_n + 1];
    for n in 2..=max_n {
        let p = spf[n] as usize;
        let m = n / p;
        coprime_part[n] = if m.is_multiple_of(p) {
            coprime_part[m]
        } else {
            m
        };
        let rest = coprime_part[n];
        if rest > 1 {
            a[n] = &a[rest] * &a[n / rest];
            continue;
        }
        // n = p^k
        if m == 1 {
            a[n] = if spec.source() == FormSource::Cm32Curve && p == 2 {
                BigInt::zero()
            } else {
                source
                    .coefficient_at_prime(p as u64)
                    .ok_or(Error::IncompleteSource { prime: p as u64 })?
            };
        } else if spec.is_bad_prime(p as u64) {
            a[n] = &a[p] * &a[m];
        } else {
            let pk = BigInt::from(p).pow(spec.weight() - 1);
            a[n] = &a[p] * &a[m] - pk * &a[m / p];
        }
    }
    a.remove(0);
    CoefficientTable::from_vec(a)
}

/// `a_1..=a_max_n` for `y² = x³ − x`, with `a_p` taken from the Hecke
/// character.
pub fn cm32_coefficients(max_n: usize) -> Result<CoefficientTable> {
    let source = |p: u64| super::curve_ap_via_character(p).ok().map(BigInt::from);
    extend_multiplicative(&source, &EigenformSpec::cm32(), max_n)
}
