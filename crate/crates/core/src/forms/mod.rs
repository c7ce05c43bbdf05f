//! Hecke eigenvalues of the two built-in eigenforms and their Satake data.

mod curve;
mod delta;
mod multiplicative;
pub mod ntt;
mod satake;

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use curve::{curve_ap, curve_ap_via_character, curve_point_count, hecke_char_value};
pub use delta::{
    delta_coefficients, delta_coefficients_multimodular, DeltaResidues, MULTIMODULAR_MAX_N,
};
pub use multiplicative::{cm32_coefficients, extend_multiplicative, PrimeCoefficients};
pub use satake::{satake_parameters, SatakeData};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSource {
    /// Ramanujan's Δ, weight 12, level 1.
    DeltaLevel1,
    /// The weight 2 newform of `y² = x³ − x`, level 32.
    Cm32Curve,
}

/// Weight, level and identity of one of the built-in newforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenformSpec {
    weight: u32,
    level: u64,
    source: FormSource,
}

impl EigenformSpec {
    pub fn new(weight: u32, level: u64, source: FormSource) -> Result<Self> {
        if weight < 2 || weight % 2 == 1 {
            return Err(Error::InvalidWeight(weight));
        }
        let expected = match source {
            FormSource::DeltaLevel1 => (12, 1),
            FormSource::Cm32Curve => (2, 32),
        };
        if (weight, level) != expected {
            return Err(Error::InvalidForm(
                "weight and level do not match the coefficient source".to_string(),
            ));
        }
        Ok(EigenformSpec {
            weight,
            level,
            source,
        })
    }

    pub const fn delta() -> Self {
        EigenformSpec {
            weight: 12,
            level: 1,
            source: FormSource::DeltaLevel1,
        }
    }

    pub const fn cm32() -> Self {
        EigenformSpec {
            weight: 2,
            level: 32,
            source: FormSource::Cm32Curve,
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn source(&self) -> FormSource {
        self.source
    }

    pub fn is_bad_prime(&self, p: u64) -> bool {
        self.level.is_multiple_of(p)
    }
}

/// Exact Fourier coefficients `a_1, ..., a_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    coeffs: Vec<BigInt>,
}

impl CoefficientTable {
    /// `coeffs[0]` is `a_1`.
    pub fn from_vec(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.first() {
            Some(a1) if a1.is_one() => Ok(CoefficientTable { coeffs }),
            Some(_) => Err(Error::InvalidForm("a_1 must be 1".to_string())),
            None => Err(Error::InvalidArgument(
                "empty coefficient table".to_string(),
            )),
        }
    }

    pub fn max_index(&self) -> usize {
        self.coeffs.len()
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    /// Pairs `(n, a_n)` in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().map(|(i, a)| (i + 1, a))
    }

    /// Coefficients as floats, index `n - 1`.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|a| a.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn truncated(&self, max_n: usize) -> CoefficientTable {
        CoefficientTable {
            coeffs: self.coeffs[..max_n.min(self.coeffs.len())].to_vec(),
        }
    }
}
