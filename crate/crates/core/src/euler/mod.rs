//! Partial Euler products ordered by increasing norm, evaluated in log
//! domain, plus the prime-power log series and rearrangement diagnostics.
//!
//! Everything here works in the normalized variable: reciprocal roots have
//! modulus at most 1 and the edge of absolute convergence is `Re s = 1`.

mod factors;

use alloc::vec::Vec;
use core::borrow::Borrow;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::forms::SatakeData;
use crate::{Error, Result};

pub use factors::{
    cm32_ideal_factors, cm32_rational_factors, standard_to_normalized, sym2_factors,
    sym2_to_normalized,
};

const ROOT_MODULUS_SLACK: f64 = 1e-10;

/// `log(1 − w)` on the principal branch, accurate for small `w`.
pub fn log_one_minus(w: Complex64) -> Complex64 {
    let x = -w.re;
    let y = -w.im;
    // |1 − w|² − 1 without cancellation
    let excess = x * (2.0 + x) + y * y;
    Complex64::new(0.5 * libm::log1p(excess), libm::atan2(y, 1.0 + x))
}

/// `N^{−s}`
fn norm_power(norm: u64, s: Complex64) -> Complex64 {
    (-s * libm::log(norm as f64)).exp()
}

/// One local factor `∏_j (1 − α_j N^{−s})^{−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerFactorSpec {
    norm: u64,
    roots: SmallVec<[Complex64; 3]>,
}

impl EulerFactorSpec {
    pub fn new(norm: u64, roots: &[Complex64]) -> Result<Self> {
        if norm < 2 {
            return Err(Error::InvalidArgument(alloc::format!(
                "factor norm {norm} below 2"
            )));
        }
        if roots.is_empty() {
            return Err(Error::InvalidArgument("factor of degree 0".into()));
        }
        for root in roots {
            let modulus = root.norm();
            if !(modulus <= 1.0 + ROOT_MODULUS_SLACK) {
                return Err(Error::Normalization { norm, modulus });
            }
        }
        Ok(EulerFactorSpec {
            norm,
            roots: roots.iter().copied().collect(),
        })
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// `α₁ᵏ + … + α_dᵏ`
    pub fn power_sum(&self, k: u32) -> Complex64 {
        self.roots.iter().map(|a| a.powu(k)).sum()
    }

    /// `∏_j (1 − α_j N^{−s})`, the reciprocal of the local factor.
    pub fn polynomial(&self, s: Complex64) -> Complex64 {
        let x = norm_power(self.norm, s);
        self.roots
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, a| acc * (1.0 - a * x))
    }

    /// `−Σ_j log(1 − α_j N^{−s})`, the whole `k`-series of this factor.
    pub fn log_factor(&self, s: Complex64) -> Complex64 {
        let x = norm_power(self.norm, s);
        -self
            .roots
            .iter()
            .map(|a| log_one_minus(a * x))
            .sum::<Complex64>()
    }

    /// `(α₁ᵏ + … + α_dᵏ) / (k N^{ks})`
    pub fn prime_power_term(&self, k: u32, s: Complex64) -> Complex64 {
        self.power_sum(k) * norm_power(self.norm, s * k as f64) / k as f64
    }
}

/// Snapshot of a running product at one cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialProductState {
    pub cutoff: f64,
    pub s: Complex64,
    pub log_value: Complex64,
    pub factor_count: u64,
}

impl PartialProductState {
    pub fn value(&self) -> Complex64 {
        self.log_value.exp()
    }
}

/// Compensated sum of factor logarithms, consumed in non-decreasing norm.
#[derive(Debug, Clone)]
pub struct EulerAccumulator {
    s: Complex64,
    sum: Complex64,
    compensation: Complex64,
    count: u64,
    last_norm: u64,
}

impl EulerAccumulator {
    pub fn new(s: Complex64) -> Self {
        EulerAccumulator {
            s,
            sum: Complex64::new(0.0, 0.0),
            compensation: Complex64::new(0.0, 0.0),
            count: 0,
            last_norm: 0,
        }
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn last_norm(&self) -> u64 {
        self.last_norm
    }

    pub fn push(&mut self, factor: &EulerFactorSpec) -> Result<()> {
        self.check_order(factor.norm)?;
        let log = factor.log_factor(self.s);
        self.add(factor.norm, log);
        Ok(())
    }

    /// Adds a precomputed `log_factor` (for callers evaluating factors in
    /// parallel and folding in order).
    pub fn push_log(&mut self, norm: u64, log: Complex64) -> Result<()> {
        self.check_order(norm)?;
        self.add(norm, log);
        Ok(())
    }

    fn check_order(&self, norm: u64) -> Result<()> {
        if norm < self.last_norm {
            return Err(Error::OrderingViolation {
                previous: self.last_norm,
                next: norm,
            });
        }
        Ok(())
    }

    fn add(&mut self, norm: u64, log: Complex64) {
        let y = log - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
        self.count += 1;
        self.last_norm = norm;
    }

    pub fn log_value(&self) -> Complex64 {
        self.sum
    }

    pub fn state(&self, cutoff: f64) -> PartialProductState {
        PartialProductState {
            cutoff,
            s: self.s,
            log_value: self.sum,
            factor_count: self.count,
        }
    }
}

/// Rejects points left of the edge `Re(s) = 1` of the normalized variable.
pub fn check_edge_or_right(s: Complex64) -> Result<()> {
    if !(s.re >= 1.0 - 1e-12) {
        return Err(Error::Domain(
            "Euler product needs Re(s) ≥ 1 in the normalized variable",
        ));
    }
    Ok(())
}

fn check_half_plane(s: Complex64) -> Result<()> {
    if !(s.re > 0.5) {
        return Err(Error::Domain(
            "prime-power series needs Re(s) > 1/2 in the normalized variable",
        ));
    }
    Ok(())
}

/// Product over factors with norm `≤ cutoff`, in stream order.
pub fn partial_euler_product<I, B>(
    factors: I,
    s: Complex64,
    cutoff: f64,
) -> Result<PartialProductState>
where
    I: IntoIterator<Item = B>,
    B: Borrow<EulerFactorSpec>,
{
    check_edge_or_right(s)?;
    let mut acc = EulerAccumulator::new(s);
    for factor in factors {
        let factor = factor.borrow();
        if factor.norm as f64 > cutoff {
            acc.check_order(factor.norm)?;
            break;
        }
        acc.push(factor)?;
    }
    Ok(acc.state(cutoff))
}

/// `Σ (α₁ᵏ+…+α_dᵏ)/(k N𝔭^{ks})` over prime powers with `N(𝔭ᵏ) ≤ cutoff`,
/// summed in increasing `N(𝔭ᵏ)`.
pub fn log_series_partial(
    factors: &[EulerFactorSpec],
    s: Complex64,
    cutoff: f64,
) -> Result<Complex64> {
    check_half_plane(s)?;
    let mut terms: Vec<(u64, Complex64)> = Vec::new();
    let mut last = 0u64;
    for factor in factors {
        if factor.norm < last {
            return Err(Error::OrderingViolation {
                previous: last,
                next: factor.norm,
            });
        }
        last = factor.norm;
        if factor.norm as f64 > cutoff {
            break;
        }
        let mut power = factor.norm;
        let mut k = 1u32;
        while power as f64 <= cutoff {
            terms.push((power, factor.prime_power_term(k, s)));
            match power.checked_mul(factor.norm) {
                Some(next) => power = next,
                None => break,
            }
            k += 1;
        }
    }
    terms.sort_by_key(|&(power, _)| power);
    Ok(kahan_sum(terms.into_iter().map(|(_, t)| t)))
}

fn kahan_sum(values: impl Iterator<Item = Complex64>) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// `|log_series_partial − Σ_{N𝔭 ≤ x} log_factor|`: the part of the
/// complete `k`-series lying beyond the cutoff.
pub fn rearrangement_gap(factors: &[EulerFactorSpec], s: Complex64, cutoff: f64) -> Result<f64> {
    let series = log_series_partial(factors, s, cutoff)?;
    let grouped = kahan_sum(
        factors
            .iter()
            .take_while(|f| f.norm as f64 <= cutoff)
            .map(|f| f.log_factor(s)),
    );
    Ok((series - grouped).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub cutoff: f64,
    pub value: Complex64,
    pub factor_count: u64,
    pub abs_error: Option<f64>,
}

/// Partial products at each cutoff, from one pass over the stream. The
/// stream must extend at least to the last cutoff.
pub fn convergence_table<I, B>(
    factors: I,
    s: Complex64,
    cutoffs: &[f64],
    reference: Option<f64>,
) -> Result<Vec<ConvergenceRow>>
where
    I: IntoIterator<Item = B>,
    B: Borrow<EulerFactorSpec>,
{
    check_edge_or_right(s)?;
    if cutoffs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(
            "cutoffs must be strictly ascending".into(),
        ));
    }
    let mut acc = EulerAccumulator::new(s);
    let mut rows = Vec::with_capacity(cutoffs.len());
    let emit = |acc: &EulerAccumulator, cutoff: f64| {
        let value = acc.state(cutoff).value();
        ConvergenceRow {
            cutoff,
            value,
            factor_count: acc.count(),
            abs_error: reference.map(|r| (value - r).norm()),
        }
    };
    let mut next = 0;
    for factor in factors {
        if next == cutoffs.len() {
            break;
        }
        let factor = factor.borrow();
        while next < cutoffs.len() && factor.norm as f64 > cutoffs[next] {
            rows.push(emit(&acc, cutoffs[next]));
            next += 1;
        }
        if next == cutoffs.len() {
            break;
        }
        acc.push(factor)?;
    }
    while next < cutoffs.len() {
        rows.push(emit(&acc, cutoffs[next]));
        next += 1;
    }
    Ok(rows)
}

/// `(1 − α²p^{−s})(1 − αβp^{−s})(1 − β²p^{−s})` in the weight-κ variable.
///
/// The middle factor is formed from `αβ` and checked against `1 − p^{κ−1−s}`.
pub fn sym2_local_factor(satake: &SatakeData, s: Complex64) -> Result<Complex64> {
    let p = satake.p;
    let weight_shift = (satake.kappa - 1) as f64;
    // α² p^{−s} = χ₁² p^{κ−1−s}
    let x = norm_power(p, s - weight_shift);
    let outer = (1.0 - satake.chi1 * satake.chi1 * x) * (1.0 - satake.chi2 * satake.chi2 * x);
    let middle_from_roots = 1.0 - satake.chi1 * satake.chi2 * x;
    let middle = 1.0 - x;
    let diff = (middle_from_roots - middle).norm();
    if diff > 1e-12 * middle.norm().max(1.0) {
        return Err(Error::Inconsistent {
            what: "middle symmetric-square factor",
            lhs: middle_from_roots.re,
            rhs: middle.re,
        });
    }
    Ok(outer * middle)
}

#[cfg(test)]
mod tests;
