//! `a_p` for `E: y² = x³ − x` (conductor 32) and its Hecke character.

use crate::arith::{is_prime, jacobi, mul_mod};
use crate::primes::{cornacchia_two_squares, GaussianIdeal, GaussianInt};
use crate::{Error, Result};

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotAnOddPrime(p));
    }
    Ok(())
}

/// `a_p = −Σ_{x mod p} (x³ − x | p)`.
pub fn curve_ap(p: u64) -> Result<i64> {
    check_odd_prime(p)?;
    let mut sum = 0i64;
    for x in 0..p {
        let x3 = mul_mod(mul_mod(x, x, p), x, p);
        let rhs = (x3 + p - x) % p;
        sum += jacobi(rhs as i64, p) as i64;
    }
    Ok(-sum)
}

/// Number of affine solutions of `y² = x³ − x` over `F_p`, by listing squares.
pub fn curve_point_count(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let mut square_roots = alloc::vec![0u32; p as usize];
    for y in 0..p {
        square_roots[mul_mod(y, y, p) as usize] += 1;
    }
    Ok((0..p)
        .map(|x| {
            let x3 = mul_mod(mul_mod(x, x, p), x, p);
            square_roots[((x3 + p - x) % p) as usize] as u64
        })
        .sum())
}

/// `χ(𝔭)`: the primary generator of an odd-norm prime ideal.
pub fn hecke_char_value(ideal: &GaussianIdeal) -> Result<GaussianInt> {
    ideal
        .generator
        .primary_associate()
        .ok_or(Error::EvenNorm(ideal.norm))
}

/// `a_p` as the trace of the Hecke character: `χ(𝔭) + χ(𝔭̄) = 2·Re χ(𝔭)` for
/// `p ≡ 1 mod 4`, and `0` for inert `p`.
pub fn curve_ap_via_character(p: u64) -> Result<i64> {
    check_odd_prime(p)?;
    if p % 4 == 3 {
        return Ok(0);
    }
    let (a, b) = cornacchia_two_squares(p)?;
    let g = GaussianInt::new(a as i64, b as i64)
        .primary_associate()
        .expect("odd norm");
    Ok(2 * g.re)
}
