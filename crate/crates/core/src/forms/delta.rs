use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::ntt::{Transform, MAX_TRANSFORM_LEN, NTT_PRIMES};
use super::CoefficientTable;
use crate::{Error, Result};

/// Sparse `(exponent, coefficient)` terms of `∏(1 − qⁿ)` below `len`, from
/// the pentagonal number theorem.
fn pentagonal_terms(len: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    for k in 1i64.. {
        let a = (k * (3 * k - 1) / 2) as usize;
        if a >= len {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.push((a, sign));
        let b = (k * (3 * k + 1) / 2) as usize;
        if b < len {
            terms.push((b, sign));
        }
    }
    terms.sort_unstable();
    terms
}

/// The sparse series raised to the power `extra + 1`, truncated to `len`
/// terms, in `i128`. `None` on overflow.
fn sparse_power_i128(sparse: &[(usize, i64)], extra: usize, len: usize) -> Option<Vec<i128>> {
    let mut acc = vec![0i128; len];
    for &(e, c) in sparse {
        acc[e] = c as i128;
    }
    for _ in 0..extra {
        let mut out = vec![0i128; len];
        for &(e, c) in sparse {
            let c = c as i128;
            for (dst, &src) in out[e..].iter_mut().zip(&acc[..len - e]) {
                *dst = dst.checked_add(src.checked_mul(c)?)?;
            }
        }
        acc = out;
    }
    Some(acc)
}

fn sparse_power_big(sparse: &[(usize, i64)], extra: usize, len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::default(); len];
    for &(e, c) in sparse {
        acc[e] = BigInt::from(c);
    }
    for _ in 0..extra {
        let mut out = vec![BigInt::default(); len];
        for &(e, c) in sparse {
            for (dst, src) in out[e..].iter_mut().zip(&acc[..len - e]) {
                if c == 1 {
                    *dst += src;
                } else if c == -1 {
                    *dst -= src;
                } else {
                    *dst += src * c;
                }
            }
        }
        acc = out;
    }
    acc
}

/// `τ(1..=max_n)` from `q·∏(1 − qⁿ)²⁴`: the pentagonal series multiplied into
/// itself 23 times, truncated at `q^max_n`.
///
/// Arithmetic is exact. It runs in `i128` and falls back to big integers if
/// any intermediate coefficient overflows. Cost is `O(max_n^{3/2})`; for
/// tables beyond ~10⁵ use [`delta_coefficients_multimodular`].
pub fn delta_coefficients(max_n: usize) -> Result<CoefficientTable> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let sparse = pentagonal_terms(max_n);
    let coeffs = match sparse_power_i128(&sparse, 23, max_n) {
        Some(small) => small.into_iter().map(BigInt::from).collect(),
        None => sparse_power_big(&sparse, 23, max_n),
    };
    CoefficientTable::from_vec(coeffs)
}

/// `Δ = q·J⁸` modulo one NTT prime, with `J = ∏(1 − qⁿ)³ = Σ (−1)ᵏ(2k+1) q^{k(k+1)/2}`.
#[derive(Debug, Clone)]
pub struct DeltaResidues {
    pub prime: u32,
    /// `τ(n) mod prime` at index `n − 1`.
    pub residues: Vec<u32>,
}

impl DeltaResidues {
    pub fn compute(prime: u32, max_n: usize) -> Self {
        let len = max_n;
        let transform_len = (2 * len).next_power_of_two().max(2);
        let transform = Transform::new(prime, transform_len);
        let ctx = *transform.context();
        let mut j = vec![0u32; len];
        for k in 0u64.. {
            let e = (k * (k + 1) / 2) as usize;
            if e >= len {
                break;
            }
            let magnitude = ((2 * k + 1) % prime as u64) as u32;
            let value = if k % 2 == 0 {
                magnitude
            } else {
                (prime - magnitude) % prime
            };
            j[e] = ctx.to_mont(value);
        }
        let j2 = transform.square_truncated(&j, len);
        let j4 = transform.square_truncated(&j2, len);
        let j8 = transform.square_truncated(&j4, len);
        DeltaResidues {
            prime,
            residues: j8.into_iter().map(|x| ctx.from_mont(x)).collect(),
        }
    }
}

/// Largest `max_n` accepted by [`delta_coefficients_multimodular`].
///
/// At this size `2·d(n)·n^{11/2}` stays far below the product of the five
/// moduli, so the centred CRT lift is exact by Deligne's bound.
pub const MULTIMODULAR_MAX_N: usize = MAX_TRANSFORM_LEN / 2;

/// Exact `τ(1..=max_n)` from residues modulo the five NTT primes.
pub fn delta_coefficients_multimodular(max_n: usize) -> Result<CoefficientTable> {
    check_multimodular_size(max_n)?;
    let parts: Vec<DeltaResidues> = NTT_PRIMES
        .iter()
        .map(|&p| DeltaResidues::compute(p, max_n))
        .collect();
    combine_residues(&parts)
}

pub(crate) fn check_multimodular_size(max_n: usize) -> Result<()> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    if max_n > MULTIMODULAR_MAX_N {
        return Err(Error::Unsupported(
            "multimodular table larger than 2^22 entries",
        ));
    }
    Ok(())
}

impl DeltaResidues {
    /// Centred CRT lift of residues modulo all of [`NTT_PRIMES`] (any order).
    pub fn combine(parts: &[DeltaResidues]) -> Result<CoefficientTable> {
        combine_residues(parts)
    }
}

fn combine_residues(parts: &[DeltaResidues]) -> Result<CoefficientTable> {
    let mut sorted: Vec<&DeltaResidues> = Vec::with_capacity(NTT_PRIMES.len());
    for &p in &NTT_PRIMES {
        let part = parts
            .iter()
            .find(|r| r.prime == p)
            .ok_or(Error::InvalidArgument(
                "missing residues for an NTT prime".into(),
            ))?;
        sorted.push(part);
    }
    let len = sorted[0].residues.len();
    if sorted.iter().any(|r| r.residues.len() != len) {
        return Err(Error::InvalidArgument(
            "residue tables differ in length".into(),
        ));
    }
    let moduli: Vec<u64> = NTT_PRIMES.iter().map(|&p| p as u64).collect();
    let k = moduli.len();
    // inv[i][j] = m_i^{-1} mod m_j for i < j
    let mut inv = [[0u64; 5]; 5];
    for i in 0..k {
        for j in (i + 1)..k {
            inv[i][j] = crate::arith::pow_mod(moduli[i] % moduli[j], moduli[j] - 2, moduli[j]);
        }
    }
    let modulus_wrapped = moduli
        .iter()
        .fold(1u128, |acc, &m| acc.wrapping_mul(m as u128));
    let mut coeffs = Vec::with_capacity(len);
    for n in 0..len {
        let mut digits = [0u64; 5];
        for j in 0..k {
            let mut x = sorted[j].residues[n] as u64;
            for i in 0..j {
                x = (x + moduli[j] - digits[i] % moduli[j]) % moduli[j];
                x = x * inv[i][j] % moduli[j];
            }
            digits[j] = x;
        }
        // u = d0 + m0(d1 + m1(d2 + ...)), computed mod 2^128
        let mut u: u128 = 0;
        for j in (0..k).rev() {
            u = u
                .wrapping_mul(moduli[j] as u128)
                .wrapping_add(digits[j] as u128);
        }
        // u / M as a float decides the sign of the centred lift
        let mut frac = 0.0f64;
        for j in 0..k {
            frac = (frac + digits[j] as f64) / moduli[j] as f64;
        }
        let value = if frac > 0.5 {
            u.wrapping_sub(modulus_wrapped) as i128
        } else {
            u as i128
        };
        coeffs.push(BigInt::from(value));
    }
    CoefficientTable::from_vec(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::rational_primes;

    /// Independent oracle: expand ∏_{n<len}(1 − qⁿ)²⁴ factor by factor.
    fn naive_tau(max_n: usize) -> Vec<BigInt> {
        let len = max_n;
        let mut series = vec![BigInt::default(); len];
        series[0] = BigInt::from(1);
        for n in 1..len {
            for _ in 0..24 {
                for i in (n..len).rev() {
                    let t = series[i - n].clone();
                    series[i] -= t;
                }
            }
        }
        series
    }

    #[test]
    fn first_values() {
        let t = delta_coefficients(10).unwrap();
        let expected = [
            1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
        ];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(t.get(n + 1).unwrap(), &BigInt::from(e));
        }
        assert_eq!(delta_coefficients(1).unwrap().max_index(), 1);
        assert!(delta_coefficients(0).is_err());
    }

    #[test]
    fn matches_factor_by_factor_expansion() {
        let direct = delta_coefficients(120).unwrap();
        let naive = naive_tau(120);
        for n in 1..=120 {
            assert_eq!(direct.get(n).unwrap(), &naive[n - 1], "n={n}");
        }
    }

    #[test]
    fn tau6_is_multiplicative() {
        let t = delta_coefficients(6).unwrap();
        assert_eq!(t.get(6).unwrap(), &(t.get(2).unwrap() * t.get(3).unwrap()));
    }

    #[test]
    fn big_integer_fallback_agrees() {
        let sparse = pentagonal_terms(300);
        let small = sparse_power_i128(&sparse, 23, 300).unwrap();
        let big = sparse_power_big(&sparse, 23, 300);
        assert!(small.iter().zip(&big).all(|(a, b)| &BigInt::from(*a) == b));
    }

    #[test]
    fn multimodular_matches_direct() {
        let n = 3000;
        let direct = delta_coefficients(n).unwrap();
        let fast = delta_coefficients_multimodular(n).unwrap();
        assert_eq!(direct, fast);
    }

    #[test]
    fn hecke_recurrence_on_prime_powers() {
        let max = 5000;
        let t = delta_coefficients(max).unwrap();
        for p in rational_primes(max as u64) {
            let p = p as usize;
            let p11 = BigInt::from(p).pow(11);
            let mut prev = BigInt::from(1);
            let mut cur = t.get(p).unwrap().clone();
            let mut pk = p;
            while pk * p <= max {
                let next = t.get(p).unwrap() * &cur - &p11 * &prev;
                pk *= p;
                assert_eq!(t.get(pk).unwrap(), &next, "p^k = {pk}");
                prev = cur;
                cur = next;
            }
        }
    }

    #[test]
    fn deligne_bound_on_primes() {
        let t = delta_coefficients_multimodular(10_000).unwrap();
        for p in rational_primes(10_000) {
            let tau = t.get(p as usize).unwrap();
            let bound = BigInt::from(4) * BigInt::from(p).pow(11);
            assert!(tau * tau <= bound, "p={p}");
        }
    }
}
