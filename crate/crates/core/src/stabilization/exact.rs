//! Rational versions of the ratios for integer eigenvalues.
//!
//! The Satake parameters enter only through `α² + β² = λ² − 2p^{κ−1}`,
//! `α²β² = p^{2κ−2}` and, for unitary `χ`, `tr(χ₁χ̄₂) = λ²/p^{κ−1} − 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::check_prime_weight;
use crate::{Error, Result};

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn prime_power(p: u64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(p).pow(e))
}

struct Local {
    p: BigRational,
    /// `p^{κ−1}`
    pk1: BigRational,
    lambda_sq: BigRational,
    kappa: u32,
}

fn local(lambda: &BigInt, p: u64, kappa: u32) -> Result<Local> {
    check_prime_weight(p, kappa)?;
    let pk1 = BigInt::from(p).pow(kappa - 1);
    let lambda_sq = lambda * lambda;
    if lambda_sq > BigInt::from(4) * &pk1 {
        return Err(Error::RamanujanViolation {
            p,
            lambda: num_traits::ToPrimitive::to_f64(lambda).unwrap_or(f64::INFINITY),
            bound: 2.0 * libm::pow(p as f64, (kappa - 1) as f64 / 2.0),
        });
    }
    Ok(Local {
        p: int(p),
        pk1: BigRational::from_integer(pk1),
        lambda_sq: BigRational::from_integer(lambda_sq),
        kappa,
    })
}

pub fn up_norm_ratio(lambda: &BigInt, p: u64, kappa: u32) -> Result<BigRational> {
    let l = local(lambda, p, kappa)?;
    let one = BigRational::one();
    Ok(prime_power(p, kappa - 2) + (&l.p - &one) * &l.lambda_sq / (&l.p + &one))
}

/// Product form `(p/(p+1))(1 − α²/p^κ)(1 − β²/p^κ)`.
pub fn stabilized_norm_ratio(lambda: &BigInt, p: u64, kappa: u32) -> Result<BigRational> {
    let l = local(lambda, p, kappa)?;
    let one = BigRational::one();
    let pk = prime_power(p, l.kappa);
    let sum_sq = &l.lambda_sq - int(2) * &l.pk1;
    let prod_sq = &l.pk1 * &l.pk1;
    let poly = &one - sum_sq / &pk + prod_sq / (&pk * &pk);
    Ok(&l.p / (&l.p + &one) * poly)
}

/// Expanded form `1 + 1/p − p^{1−κ}λ²/(p+1)`.
pub fn stabilized_norm_ratio_expanded(lambda: &BigInt, p: u64, kappa: u32) -> Result<BigRational> {
    let l = local(lambda, p, kappa)?;
    let one = BigRational::one();
    Ok(&one + l.p.recip() - &l.lambda_sq / (&l.pk1 * (&l.p + &one)))
}

/// Unsimplified adelic norm with `|χ₁| = |χ₂| = 1`:
/// `(2p²−p+1)/(p+1) + (p²−p)/(p+1)·tr(χ₁χ̄₂)`.
pub fn adelic_up_norm_raw(lambda: &BigInt, p: u64, kappa: u32) -> Result<BigRational> {
    let l = local(lambda, p, kappa)?;
    let one = BigRational::one();
    let trace = &l.lambda_sq / &l.pk1 - int(2);
    let p2 = &l.p * &l.p;
    let denom = &l.p + &one;
    Ok((int(2) * &p2 - &l.p + &one) / &denom + (&p2 - &l.p) / &denom * trace)
}

/// `1 + (p−1)λ²p^{2−κ}/(p+1)`.
pub fn adelic_up_norm(lambda: &BigInt, p: u64, kappa: u32) -> Result<BigRational> {
    let l = local(lambda, p, kappa)?;
    let one = BigRational::one();
    Ok(&one + (&l.p - &one) * &l.lambda_sq / (prime_power(p, kappa - 2) * (&l.p + &one)))
}

pub fn local_period(lambda: &BigInt, p: u64, kappa: u32) -> Result<BigRational> {
    Ok(stabilized_norm_ratio(lambda, p, kappa)?.recip())
}

/// `ζ_p(2) = p²/(p²−1)`.
pub fn local_zeta_two(p: u64) -> BigRational {
    let p2 = int(p) * int(p);
    &p2 / (&p2 - BigRational::one())
}

/// `(1 − α²p^{−κ})(1 − p^{−1})(1 − β²p^{−κ})`.
pub fn sym2_cubic_at_weight(lambda: &BigInt, p: u64, kappa: u32) -> Result<BigRational> {
    let l = local(lambda, p, kappa)?;
    let one = BigRational::one();
    let pk = prime_power(p, l.kappa);
    let sum_sq = &l.lambda_sq - int(2) * &l.pk1;
    let outer = &one - sum_sq / &pk + (&l.pk1 * &l.pk1) / (&pk * &pk);
    Ok(outer * (&one - l.p.recip()))
}
