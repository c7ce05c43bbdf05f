use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::{Error, Result};

/// Satake parameters at one good prime, classical (`α, β`) and unitary
/// (`χ_j = α_or_β / p^{(κ−1)/2}`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SatakeData {
    pub p: u64,
    pub kappa: u32,
    pub lambda: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub chi1: Complex64,
    pub chi2: Complex64,
}

impl SatakeData {
    /// Same data with `α` and `β` exchanged.
    pub fn swapped(&self) -> SatakeData {
        SatakeData {
            alpha: self.beta,
            beta: self.alpha,
            chi1: self.chi2,
            chi2: self.chi1,
            ..*self
        }
    }

    /// `p^{κ−1}`.
    pub fn norm_power(&self) -> f64 {
        libm::pow(self.p as f64, (self.kappa - 1) as f64)
    }

    /// Purely imaginary `s_j` with `χ_j = p^{s_j}`.
    pub fn spectral_exponents(&self) -> (Complex64, Complex64) {
        let log_p = libm::log(self.p as f64);
        (
            Complex64::new(0.0, self.chi1.arg() / log_p),
            Complex64::new(0.0, self.chi2.arg() / log_p),
        )
    }

    /// Relative residuals of the defining relations, largest first by
    /// relation: `(α+β−λ, αβ−p^{κ−1}, |α|−|β|, |χ|−1, χ₁χ₂−1)`.
    pub fn residuals(&self) -> [f64; 5] {
        let pk = self.norm_power();
        let scale = libm::sqrt(pk);
        let sum = (self.alpha + self.beta - self.lambda).norm() / self.lambda.abs().max(scale);
        let prod = (self.alpha * self.beta - pk).norm() / pk;
        let modulus =
            ((self.alpha.norm() - scale).abs() + (self.beta.norm() - scale).abs()) / scale;
        let unit = (self.chi1.norm() - 1.0)
            .abs()
            .max((self.chi2.norm() - 1.0).abs());
        let chi_prod = (self.chi1 * self.chi2 - 1.0).norm();
        [sum, prod, modulus, unit, chi_prod]
    }

    /// Checks `|χ_j| = 1` to `tol`.
    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        for chi in [self.chi1, self.chi2] {
            if (chi.norm() - 1.0).abs() > tol {
                return Err(Error::RamanujanViolation {
                    p: self.p,
                    lambda: self.lambda,
                    bound: 2.0 * libm::sqrt(self.norm_power()),
                });
            }
        }
        Ok(())
    }
}

/// Roots of `X² − λX + p^{κ−1}`, labelled so that `Im α ≥ 0`.
pub fn satake_parameters(lambda: f64, p: u64, kappa: u32) -> Result<SatakeData> {
    if kappa < 2 || kappa % 2 == 1 {
        return Err(Error::InvalidWeight(kappa));
    }
    if !is_prime(p) {
        return Err(Error::NotAPrime(p));
    }
    let pk = libm::pow(p as f64, (kappa - 1) as f64);
    let scale = libm::sqrt(pk);
    let bound = 2.0 * scale;
    if !lambda.is_finite() || lambda.abs() > bound * (1.0 + 1e-12) {
        return Err(Error::RamanujanViolation { p, lambda, bound });
    }
    let half = 0.5 * lambda;
    let disc = (pk - half * half).max(0.0);
    let alpha = Complex64::new(half, libm::sqrt(disc));
    let beta = alpha.conj();
    Ok(SatakeData {
        p,
        kappa,
        lambda,
        alpha,
        beta,
        chi1: alpha / scale,
        chi2: beta / scale,
    })
}
