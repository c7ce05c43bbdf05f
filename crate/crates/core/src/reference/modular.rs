use alloc::vec::Vec;

use core::f64::consts::PI;
use num_complex::Complex64;

use crate::forms::{delta_coefficients, CoefficientTable};
use crate::{Error, Result};

const MAX_REDUCTION_STEPS: usize = 10_000;

/// A cusp form on `SL₂(Z)` given by its q-expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelOneForm {
    weight: u32,
    /// `a_n` at index `n − 1`
    coeffs: Vec<f64>,
}

impl LevelOneForm {
    pub fn new(weight: u32, coeffs: &CoefficientTable) -> Result<Self> {
        if weight < 2 || weight % 2 == 1 {
            return Err(Error::InvalidWeight(weight));
        }
        Ok(LevelOneForm {
            weight,
            coeffs: coeffs.to_f64(),
        })
    }

    /// Δ with `terms` coefficients.
    pub fn delta(terms: usize) -> Result<Self> {
        LevelOneForm::new(12, &delta_coefficients(terms)?)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn coefficient(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i)).copied()
    }

    /// `Σ a_n qⁿ` at `z` without any reduction. Stops once the crude bound
    /// `2 n^{κ/2} |q|ⁿ` on the next term falls below `tol·|q|`.
    pub fn q_series(&self, z: Complex64, tol: f64) -> Result<Complex64> {
        if !(z.im > 0.0) {
            return Err(Error::Domain("point not in the upper half-plane"));
        }
        let q = (Complex64::new(0.0, 2.0 * PI) * z).exp();
        let q_abs = libm::exp(-2.0 * PI * z.im);
        let half_weight = self.weight as f64 / 2.0;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut power = q;
        let mut power_abs = q_abs;
        for (i, &a) in self.coeffs.iter().enumerate() {
            let n = (i + 1) as f64;
            if 2.0 * libm::pow(n, half_weight) * power_abs < tol * q_abs {
                return Ok(sum);
            }
            sum += power * a;
            power *= q;
            power_abs *= q_abs;
        }
        Err(Error::IncompleteTable {
            needed: self.coeffs.len() + 1,
            available: self.coeffs.len(),
        })
    }
}

/// `f(z)` for a level one form: `z` is moved into the fundamental domain by
/// translations and `z ↦ −1/z`, collecting `z^{−κ}` at each inversion.
pub fn evaluate_level1_form(
    form: &LevelOneForm,
    z: Complex64,
    truncation_tol: f64,
) -> Result<Complex64> {
    if !(z.im > 0.0) || !z.re.is_finite() {
        return Err(Error::Domain("point not in the upper half-plane"));
    }
    let kappa = form.weight as i32;
    let mut w = z;
    let mut factor = Complex64::new(1.0, 0.0);
    for _ in 0..MAX_REDUCTION_STEPS {
        w.re -= libm::round(w.re);
        if w.norm_sqr() < 1.0 - 1e-14 {
            // f(w) = w^{−κ} f(−1/w)
            factor *= w.powi(-kappa);
            w = -w.inv();
        } else {
            return Ok(factor * form.q_series(w, truncation_tol)?);
        }
    }
    Err(Error::ReductionCycle)
}
