//! Builders for the normalized local factors used in the experiments.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::EulerFactorSpec;
use crate::forms::{
    curve_ap_via_character, hecke_char_value, satake_parameters, EigenformSpec, PrimeCoefficients,
};
use crate::primes::{IdealStream, PrimeStream};
use crate::{Error, Result};

/// Normalized variable for the standard L-function of a weight-κ form.
pub fn standard_to_normalized(s: Complex64, weight: u32) -> Complex64 {
    s - 0.5 * (weight as f64 - 1.0)
}

/// Normalized variable for the symmetric square of a weight-κ form.
pub fn sym2_to_normalized(s: Complex64, weight: u32) -> Complex64 {
    s - (weight as f64 - 1.0)
}

/// Degree 2 factors of `y² = x³ − x` over odd primes `p ≤ cutoff`, with
/// roots `α_p/√p, β_p/√p`.
pub fn cm32_rational_factors(cutoff: u64) -> Result<Vec<EulerFactorSpec>> {
    let mut out = Vec::new();
    for p in PrimeStream::new(cutoff).filter(|&p| p != 2) {
        let ap = curve_ap_via_character(p)?;
        let satake = satake_parameters(ap as f64, p, 2)?;
        out.push(EulerFactorSpec::new(p, &[satake.chi1, satake.chi2])?);
    }
    Ok(out)
}

/// Degree 1 factors `1 − χ(𝔭)N𝔭^{−1/2}·N𝔭^{−s}` over odd prime ideals of
/// `Z[i]` with norm `≤ cutoff`, in stream order.
pub fn cm32_ideal_factors(cutoff: u64) -> Result<Vec<EulerFactorSpec>> {
    let mut out = Vec::new();
    for ideal in IdealStream::new(cutoff, true) {
        let chi = hecke_char_value(&ideal)?;
        let scale = libm::sqrt(ideal.norm as f64);
        let root = Complex64::new(chi.re as f64 / scale, chi.im as f64 / scale);
        out.push(EulerFactorSpec::new(ideal.norm, &[root])?);
    }
    Ok(out)
}

/// Degree 3 factors of the symmetric square at good primes `p ≤ cutoff`,
/// with roots `χ₁², 1, χ₂²`.
pub fn sym2_factors(
    source: &dyn PrimeCoefficients,
    spec: &EigenformSpec,
    cutoff: u64,
) -> Result<Vec<EulerFactorSpec>> {
    let mut out = Vec::new();
    for p in PrimeStream::new(cutoff) {
        if spec.is_bad_prime(p) {
            continue;
        }
        let lambda = source
            .coefficient_at_prime(p)
            .ok_or(Error::IncompleteSource { prime: p })?
            .to_f64()
            .ok_or(Error::Domain("coefficient not representable as f64"))?;
        let satake = satake_parameters(lambda, p, spec.weight())?;
        let one = Complex64::new(1.0, 0.0);
        out.push(EulerFactorSpec::new(
            p,
            &[satake.chi1 * satake.chi1, one, satake.chi2 * satake.chi2],
        )?);
    }
    Ok(out)
}
