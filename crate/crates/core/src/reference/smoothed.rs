use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coefficients needed per unit of the largest smoothing scale.
pub const TABLE_PER_SCALE: f64 = 20.0;

/// What the caller asserts about the L-function behind the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Continuation {
    Entire,
    HasPoles,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothedValue {
    /// Extrapolation of the smoothed sums to infinite scale.
    pub value: Complex64,
    /// `Σ a_n n^{−s} e^{−n/X}` for each scale `X`, in input order.
    pub scale_values: Vec<(f64, Complex64)>,
    /// `|S(X_{i+1}) − S(X_i)|`
    pub successive_differences: Vec<f64>,
    /// Distance between the two highest-order extrapolants.
    pub error_estimate: f64,
    pub converged: bool,
}

impl SmoothedValue {
    pub fn largest_scale_value(&self) -> Complex64 {
        self.scale_values
            .last()
            .map(|&(_, v)| v)
            .unwrap_or_default()
    }
}

/// Smoothed partial sums of `Σ a_n n^{−s}` at each scale, extrapolated in
/// `1/X` to `1/X = 0` by Neville's scheme.
///
/// For an entire L-function the smoothed sum is `L(s)` plus a power series
/// in `1/X` with coefficients `(−1)ᵏ L(s−k)/k!`, so polynomial extrapolation
/// removes the smoothing bias. `coeffs[n − 1]` is `a_n`.
pub fn smoothed_dirichlet_value(
    coeffs: &[f64],
    s: Complex64,
    scales: &[f64],
    continuation: Continuation,
    tolerance: f64,
) -> Result<SmoothedValue> {
    if continuation != Continuation::Entire {
        return Err(Error::Unsupported("smoothing needs an entire L-function"));
    }
    if scales.is_empty()
        || scales.iter().any(|&x| !(x > 0.0))
        || scales.windows(2).any(|w| !(w[0] < w[1]))
    {
        return Err(Error::InvalidArgument(
            "smoothing scales must be positive and ascending".into(),
        ));
    }
    let largest = scales[scales.len() - 1];
    let needed = libm::ceil(TABLE_PER_SCALE * largest) as usize;
    if coeffs.len() < needed {
        return Err(Error::IncompleteTable {
            needed,
            available: coeffs.len(),
        });
    }
    let mut sums: Vec<Complex64> = alloc::vec![Complex64::new(0.0, 0.0); scales.len()];
    let decay: Vec<f64> = scales.iter().map(|x| -1.0 / x).collect();
    for (i, &a) in coeffs[..needed].iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let n = (i + 1) as f64;
        let dirichlet = (-s * libm::log(n)).exp() * a;
        for (sum, &d) in sums.iter_mut().zip(&decay) {
            *sum += dirichlet * libm::exp(d * n);
        }
    }
    let scale_values: Vec<(f64, Complex64)> =
        scales.iter().copied().zip(sums.iter().copied()).collect();
    let successive_differences = sums.windows(2).map(|w| (w[1] - w[0]).norm()).collect();

    // Neville tableau in h = 1/X, evaluated at h = 0
    let h: Vec<f64> = scales.iter().map(|x| 1.0 / x).collect();
    let mut table = sums.clone();
    let mut previous_order = table[table.len() - 1];
    let m = table.len();
    for level in 1..m {
        if level == m - 1 {
            previous_order = table[1];
        }
        for i in 0..(m - level) {
            let j = i + level;
            table[i] = (table[i + 1] * h[i] - table[i] * h[j]) / (h[i] - h[j]);
        }
    }
    let value = table[0];
    let error_estimate = if m == 1 {
        f64::INFINITY
    } else {
        (value - previous_order).norm()
    };
    Ok(SmoothedValue {
        value,
        scale_values,
        successive_differences,
        error_estimate,
        converged: error_estimate <= tolerance,
    })
}
