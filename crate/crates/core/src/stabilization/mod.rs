//! Closed-form norm ratios for `U_p f` and the p-stabilization `f_p^α`, the
//! local adelic norm of `U_p φ`, and local periods.
//!
//! All ratios are relative to `⟨f,f⟩` at level `Np`. The float versions here
//! take [`SatakeData`]; [`exact`] mirrors them in rational arithmetic for
//! integer eigenvalues.

pub mod exact;

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::euler::sym2_local_factor;
use crate::forms::{satake_parameters, EigenformSpec, PrimeCoefficients, SatakeData};
use crate::primes::PrimeStream;
use crate::{Error, Result};

const AGREEMENT: f64 = 1e-12;

fn check_prime_weight(p: u64, kappa: u32) -> Result<()> {
    if kappa < 2 || kappa % 2 == 1 {
        return Err(Error::InvalidWeight(kappa));
    }
    if !is_prime(p) {
        return Err(Error::NotAPrime(p));
    }
    Ok(())
}

fn agree(what: &'static str, lhs: f64, rhs: f64, tol: f64) -> Result<()> {
    if (lhs - rhs).abs() > tol * lhs.abs().max(rhs.abs()) {
        return Err(Error::Inconsistent { what, lhs, rhs });
    }
    Ok(())
}

/// `⟨U_p f, U_p f⟩ / ⟨f, f⟩ = p^{κ−2} + (p−1)λ²/(p+1)`.
pub fn up_norm_ratio(lambda: f64, p: u64, kappa: u32) -> Result<f64> {
    check_prime_weight(p, kappa)?;
    let pf = p as f64;
    Ok(libm::pow(pf, kappa as f64 - 2.0) + (pf - 1.0) / (pf + 1.0) * lambda * lambda)
}

/// `⟨f_p^α, f_p^α⟩ / ⟨f, f⟩`, from the product form
/// `(p/(p+1))(1 − α²/p^κ)(1 − β²/p^κ)` checked against
/// `1 + 1/p − p^{1−κ}λ²/(p+1)`.
pub fn stabilized_norm_ratio(satake: &SatakeData) -> Result<f64> {
    let pf = satake.p as f64;
    // α²/p^κ = χ₁²/p
    let product: Complex64 = (1.0 - satake.chi1 * satake.chi1 / pf)
        * (1.0 - satake.chi2 * satake.chi2 / pf)
        * (pf / (pf + 1.0));
    // p^{1−κ}λ² = (λ/p^{(κ−1)/2})²
    let trace = satake.lambda / libm::sqrt(satake.norm_power());
    let expanded = 1.0 + 1.0 / pf - trace * trace / (pf + 1.0);
    if product.im.abs() > AGREEMENT {
        return Err(Error::Inconsistent {
            what: "imaginary part of the stabilized ratio",
            lhs: product.im,
            rhs: 0.0,
        });
    }
    agree(
        "stabilized ratio closed forms",
        product.re,
        expanded,
        AGREEMENT,
    )?;
    Ok(product.re)
}

/// `⟨U_p φ, U_p φ⟩_p` for the local unramified vector, checked against its
/// simplification `1 + (p−1)λ²p^{2−κ}/(p+1)`.
pub fn adelic_up_norm(satake: &SatakeData) -> Result<f64> {
    satake.check_unitary(1e-8)?;
    let pf = satake.p as f64;
    let denom = pf + 1.0;
    let cross = satake.chi1 * satake.chi2.conj();
    let raw = (pf * pf - pf + 1.0) / denom * satake.chi1.norm_sqr()
        + pf * pf / denom * satake.chi2.norm_sqr()
        + (pf * pf - pf) / denom * 2.0 * cross.re;
    // λ²p^{2−κ} = p·(λ/p^{(κ−1)/2})²
    let trace = satake.lambda / libm::sqrt(satake.norm_power());
    let simplified = 1.0 + (pf - 1.0) * pf * trace * trace / denom;
    agree("adelic norm closed forms", raw, simplified, AGREEMENT)?;
    Ok(simplified)
}

/// `ζ_p(s) = (1 − p^{−s})^{−1}`
pub fn local_zeta(p: u64, s: f64) -> f64 {
    1.0 / (1.0 - libm::pow(p as f64, -s))
}

/// `⟨f,f⟩ / ⟨f_p^α, f_p^α⟩` at level `Np`, checked against
/// `1/(ζ_p(2)·L_p(κ, Sym² f))` where `L_p` is the cubic polynomial.
pub fn local_period(satake: &SatakeData) -> Result<f64> {
    let period = 1.0 / stabilized_norm_ratio(satake)?;
    let cubic = sym2_local_factor(satake, Complex64::new(satake.kappa as f64, 0.0))?;
    let via_sym2 = 1.0 / (local_zeta(satake.p, 2.0) * cubic.re);
    agree(
        "local period versus symmetric-square factor",
        period,
        via_sym2,
        AGREEMENT,
    )?;
    Ok(period)
}

/// The four ratios at one prime together with their identity residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub p: u64,
    pub kappa: u32,
    pub lambda: f64,
    pub up_ratio: f64,
    pub stab_ratio: f64,
    pub adelic_norm: f64,
    pub local_period: f64,
    /// `|up_ratio − p^{κ−2}·adelic_norm| / up_ratio`
    pub bridge_residual: f64,
    /// `|stab_ratio·local_period − 1|`
    pub period_residual: f64,
}

impl StabilizationReport {
    pub fn compute(lambda: f64, p: u64, kappa: u32) -> Result<Self> {
        let satake = satake_parameters(lambda, p, kappa)?;
        let up_ratio = up_norm_ratio(lambda, p, kappa)?;
        let stab_ratio = stabilized_norm_ratio(&satake)?;
        let adelic_norm = adelic_up_norm(&satake)?;
        let local_period = local_period(&satake)?;
        let scaled = libm::pow(p as f64, kappa as f64 - 2.0) * adelic_norm;
        Ok(StabilizationReport {
            p,
            kappa,
            lambda,
            up_ratio,
            stab_ratio,
            adelic_norm,
            local_period,
            bridge_residual: (up_ratio - scaled).abs() / up_ratio,
            period_residual: (stab_ratio * local_period - 1.0).abs(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub p: u64,
    pub stab_ratio: f64,
    /// `|stab_ratio − 1|`
    pub deviation: f64,
}

impl LimitRow {
    /// `1/p + 4/(p+1)`, the bound implied by `λ² ≤ 4p^{κ−1}`.
    pub fn envelope(&self) -> f64 {
        let pf = self.p as f64;
        1.0 / pf + 4.0 / (pf + 1.0)
    }
}

/// `stab_ratio(p)` and its distance from 1 for primes `p ∤ N`, `p ≤ prime_limit`.
pub fn stabilization_limit_table(
    form: &EigenformSpec,
    source: &dyn PrimeCoefficients,
    prime_limit: u64,
) -> Result<Vec<LimitRow>> {
    if prime_limit < 2 {
        return Err(Error::InvalidArgument("prime limit below 2".into()));
    }
    let mut rows = Vec::new();
    for p in PrimeStream::new(prime_limit).filter(|&p| !form.is_bad_prime(p)) {
        let lambda = source
            .coefficient_at_prime(p)
            .ok_or(Error::IncompleteSource { prime: p })?
            .to_f64()
            .ok_or(Error::Domain("coefficient not representable as f64"))?;
        let stab_ratio = stabilized_norm_ratio(&satake_parameters(lambda, p, form.weight())?)?;
        rows.push(LimitRow {
            p,
            stab_ratio,
            deviation: (stab_ratio - 1.0).abs(),
        });
    }
    Ok(rows)
}
