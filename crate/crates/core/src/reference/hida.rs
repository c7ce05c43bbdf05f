use alloc::vec::Vec;

use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, factorial_f64, prime_divisors};
use crate::euler::sym2_local_factor;
use crate::forms::{satake_parameters, EigenformSpec, PrimeCoefficients};
use crate::primes::PrimeStream;
use crate::stabilization::{local_period, local_zeta};
use crate::{Error, Result};

/// The constant relating `⟨f,f⟩` to `L^N(κ, Sym² f)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HidaBridge {
    pub kappa: u32,
    pub level: u64,
    /// 2 if `N ≤ 2`, else 1
    pub delta_n: u32,
    /// `∏_{p|N} (1 − λ_p²/p^κ)`
    pub euler_correction: f64,
    /// `2^{2κ} π^{κ+1} / ((κ−1)!·δ(N)·N·φ(N))`
    pub constant: f64,
}

impl HidaBridge {
    /// `bad_lambdas` lists `(p, λ_p)` for exactly the primes dividing `level`.
    pub fn new(kappa: u32, level: u64, bad_lambdas: &[(u64, f64)]) -> Result<Self> {
        if kappa < 2 || kappa % 2 == 1 {
            return Err(Error::InvalidWeight(kappa));
        }
        if level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        let mut divisors = prime_divisors(level);
        let mut given: Vec<u64> = bad_lambdas.iter().map(|&(p, _)| p).collect();
        divisors.sort_unstable();
        given.sort_unstable();
        if divisors != given {
            return Err(Error::InvalidArgument(alloc::format!(
                "eigenvalues supplied at {given:?}, level {level} has prime divisors {divisors:?}"
            )));
        }
        let euler_correction = bad_lambdas
            .iter()
            .map(|&(p, lambda)| 1.0 - lambda * lambda / libm::pow(p as f64, kappa as f64))
            .product();
        let delta_n = if level <= 2 { 2 } else { 1 };
        let kf = kappa as f64;
        let log_constant = 2.0 * kf * core::f64::consts::LN_2 + (kf + 1.0) * libm::log(PI)
            - libm::log(factorial_f64(kappa - 1))
            - libm::log((delta_n as u64 * level * euler_phi(level)) as f64);
        Ok(HidaBridge {
            kappa,
            level,
            delta_n,
            euler_correction,
            constant: libm::exp(log_constant),
        })
    }

    /// `L^N(κ, Sym² f)` from `⟨f, f⟩`.
    pub fn value(&self, petersson_norm: f64) -> Result<f64> {
        if !(petersson_norm > 0.0) {
            return Err(Error::Domain("Petersson norm must be positive"));
        }
        Ok(self.euler_correction * self.constant * petersson_norm)
    }

    /// `⟨f, f⟩` from `L^N(κ, Sym² f)`.
    pub fn petersson_from_l_value(&self, l_value: f64) -> f64 {
        l_value / (self.euler_correction * self.constant)
    }
}

pub fn hida_bridge_value(
    kappa: u32,
    level: u64,
    petersson_norm: f64,
    bad_lambdas: &[(u64, f64)],
) -> Result<f64> {
    HidaBridge::new(kappa, level, bad_lambdas)?.value(petersson_norm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorizationRow {
    pub cutoff: u64,
    /// The period rebuilt from local periods up to `cutoff`.
    pub rhs: f64,
    /// `|rhs − ⟨f,f⟩| / ⟨f,f⟩`
    pub relative_gap: f64,
    /// `|∏_{p≤x} ⟨f,f⟩^{(p)}·ζ_p(2)·L_p(κ, Sym² f) − 1|`
    pub identity_residual: f64,
    /// `∏_{p≤x, p∤N} ζ_p(2)`
    pub zeta_partial: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub petersson_norm: f64,
    /// `ζ^N(2)`
    pub zeta_target: f64,
    pub rows: Vec<FactorizationRow>,
}

/// Rebuilds `⟨f,f⟩_N` as `C⁻¹·ζ^N(2)·∏_{p|N}(1 − λ²/p^κ)^{−1}·∏_{p≤x} ⟨f,f⟩^{(p)}`
/// at each cutoff and compares it with `petersson_norm`.
pub fn global_factorization_check(
    form: &EigenformSpec,
    source: &dyn PrimeCoefficients,
    petersson_norm: f64,
    cutoffs: &[u64],
) -> Result<FactorizationReport> {
    if cutoffs.is_empty() || cutoffs[0] < 2 || cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "cutoffs must be ascending and at least 2".into(),
        ));
    }
    let kappa = form.weight();
    let level = form.level();
    let lambda_at = |p: u64| -> Result<f64> {
        source
            .coefficient_at_prime(p)
            .ok_or(Error::IncompleteSource { prime: p })?
            .to_f64()
            .ok_or(Error::Domain("coefficient not representable as f64"))
    };
    let bad: Vec<(u64, f64)> = prime_divisors(level)
        .into_iter()
        .map(|p| Ok((p, lambda_at(p)?)))
        .collect::<Result<_>>()?;
    let bridge = HidaBridge::new(kappa, level, &bad)?;
    let zeta_target = (PI * PI / 6.0)
        * bad
            .iter()
            .map(|&(p, _)| 1.0 - 1.0 / (p as f64 * p as f64))
            .product::<f64>();
    let scale = zeta_target / (bridge.constant * bridge.euler_correction);

    let mut log_periods = Kahan::default();
    let mut log_identity = Kahan::default();
    let mut log_zeta = Kahan::default();
    let mut rows = Vec::with_capacity(cutoffs.len());
    let mut next = 0;
    let emit = |cutoff: u64, periods: f64, identity: f64, zeta: f64| {
        let rhs = scale * libm::exp(periods);
        FactorizationRow {
            cutoff,
            rhs,
            relative_gap: (rhs - petersson_norm).abs() / petersson_norm,
            identity_residual: libm::expm1(identity).abs(),
            zeta_partial: libm::exp(zeta),
        }
    };
    let last = cutoffs[cutoffs.len() - 1];
    for p in PrimeStream::new(last) {
        while p > cutoffs[next] {
            rows.push(emit(
                cutoffs[next],
                log_periods.sum,
                log_identity.sum,
                log_zeta.sum,
            ));
            next += 1;
        }
        if form.is_bad_prime(p) {
            continue;
        }
        let satake = satake_parameters(lambda_at(p)?, p, kappa)?;
        let period = local_period(&satake)?;
        let zeta = local_zeta(p, 2.0);
        let cubic = sym2_local_factor(&satake, Complex64::new(kappa as f64, 0.0))?.re;
        log_periods.add(libm::log(period));
        log_identity.add(libm::log(period * zeta * cubic));
        log_zeta.add(libm::log(zeta));
    }
    while next < cutoffs.len() {
        rows.push(emit(
            cutoffs[next],
            log_periods.sum,
            log_identity.sum,
            log_zeta.sum,
        ));
        next += 1;
    }
    Ok(FactorizationReport {
        petersson_norm,
        zeta_target,
        rows,
    })
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}
