use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modular::{evaluate_level1_form, LevelOneForm};
use super::quadrature::GaussLegendre;
use crate::forms::satake_parameters;
use crate::{Error, Result};

/// Height where the level one integration stops; the integrand of Δ there
/// is below `e^{−4π·6}·6^{10}` relative to its bulk.
pub const LEVEL_ONE_HEIGHT: f64 = 6.0;

const SERIES_TOL: f64 = 1e-18;

/// Panel layout over the fundamental domain: `x ∈ [−1/2, 1/2]` is cut into
/// `x_panels`; the curved strip `√(1−x²) ≤ y ≤ 2` into `strip_panels`; the
/// rectangle `2 ≤ y ≤ Y` into `rect_panels_per_unit` panels per unit height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mesh {
    pub x_panels: usize,
    pub strip_panels: usize,
    pub rect_panels_per_unit: usize,
    pub order: usize,
}

impl Mesh {
    pub const fn standard() -> Self {
        Mesh {
            x_panels: 2,
            strip_panels: 2,
            rect_panels_per_unit: 1,
            order: 12,
        }
    }

    /// Every panel halved.
    pub fn refined(&self) -> Self {
        Mesh {
            x_panels: 2 * self.x_panels,
            strip_panels: 2 * self.strip_panels,
            rect_panels_per_unit: 2 * self.rect_panels_per_unit,
            order: self.order,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    /// Real part of the integral on the refined mesh.
    pub value: f64,
    /// `|refined − coarse|`, plus the imaginary part for a pairing.
    pub error_estimate: f64,
    pub coarse_value: f64,
    pub imaginary_part: f64,
    /// The coarse mesh; the value comes from `mesh.refined()`.
    pub mesh: Mesh,
    pub truncation_height: f64,
    /// Smallest integrand sample (`|g|² y^{κ−2}` for norms).
    pub min_sample: f64,
}

/// `∫_F h(z) dx dy` together with the smallest real sample.
fn integrate_fundamental_domain(
    mesh: &Mesh,
    height: f64,
    mut integrand: impl FnMut(Complex64) -> Result<Complex64>,
) -> Result<(Complex64, f64)> {
    let rule = GaussLegendre::new(mesh.order);
    let mut total = Complex64::new(0.0, 0.0);
    let mut min_sample = f64::INFINITY;
    let dx = 1.0 / mesh.x_panels as f64;
    let rect_panels = libm::ceil((height - 2.0) * mesh.rect_panels_per_unit as f64) as usize;
    let dy_rect = (height - 2.0) / rect_panels as f64;
    for ix in 0..mesh.x_panels {
        let x0 = -0.5 + ix as f64 * dx;
        for (x, wx) in rule.mapped(x0, x0 + dx) {
            let floor = libm::sqrt(1.0 - x * x);
            let dy_strip = (2.0 - floor) / mesh.strip_panels as f64;
            let mut column = Complex64::new(0.0, 0.0);
            for iy in 0..mesh.strip_panels {
                let y0 = floor + iy as f64 * dy_strip;
                for (y, wy) in rule.mapped(y0, y0 + dy_strip) {
                    let v = integrand(Complex64::new(x, y))?;
                    min_sample = min_sample.min(v.re);
                    column += v * wy;
                }
            }
            for iy in 0..rect_panels {
                let y0 = 2.0 + iy as f64 * dy_rect;
                for (y, wy) in rule.mapped(y0, y0 + dy_rect) {
                    let v = integrand(Complex64::new(x, y))?;
                    min_sample = min_sample.min(v.re);
                    column += v * wy;
                }
            }
            total += column * wx;
        }
    }
    Ok((total, min_sample))
}

fn with_refinement(
    mesh: Mesh,
    height: f64,
    tolerance: f64,
    mut integrand: impl FnMut(Complex64) -> Result<Complex64>,
) -> Result<QuadratureResult> {
    let (coarse, _) = integrate_fundamental_domain(&mesh, height, &mut integrand)?;
    let (fine, min_sample) = integrate_fundamental_domain(&mesh.refined(), height, &mut integrand)?;
    let error_estimate = (fine.re - coarse.re).abs() + fine.im.abs();
    if error_estimate > tolerance * fine.re.abs() {
        return Err(Error::AccuracyNotReached {
            estimate: error_estimate / fine.re.abs(),
            requested: tolerance,
        });
    }
    Ok(QuadratureResult {
        value: fine.re,
        error_estimate,
        coarse_value: coarse.re,
        imaginary_part: fine.im,
        mesh,
        truncation_height: height,
        min_sample,
    })
}

/// `∫_F |f(z)|² y^{κ−2} dx dy` on `mesh` and its refinement. Fails if the
/// relative difference exceeds `tolerance`.
pub fn petersson_norm_level1(
    form: &LevelOneForm,
    mesh: Mesh,
    tolerance: f64,
) -> Result<QuadratureResult> {
    let weight_power = form.weight() as f64 - 2.0;
    with_refinement(mesh, LEVEL_ONE_HEIGHT, tolerance, |z| {
        let v = evaluate_level1_form(form, z, SERIES_TOL)?;
        Ok(Complex64::new(
            v.norm_sqr() * libm::pow(z.im, weight_power),
            0.0,
        ))
    })
}

/// Level `p` functions built from a level one eigenform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gamma0Function {
    /// `f` itself.
    Plain,
    /// `f(z) − β_p f(pz)`, with `Im α_p ≥ 0`.
    Stabilized,
    /// `(f|η)(z) = p^{κ/2} f(pz)`.
    Eta,
}

struct LevelP<'a> {
    form: &'a LevelOneForm,
    p: u64,
    beta: Complex64,
    eta_scale: f64,
}

impl LevelP<'_> {
    fn new(form: &LevelOneForm, p: u64) -> Result<LevelP<'_>> {
        if p != 2 && p != 3 {
            return Err(Error::Unsupported(
                "Γ₀(p) quadrature is provided for p = 2, 3",
            ));
        }
        let lambda = form.coefficient(p as usize).ok_or(Error::IncompleteTable {
            needed: p as usize,
            available: 0,
        })?;
        let satake = satake_parameters(lambda, p, form.weight())?;
        Ok(LevelP {
            form,
            p,
            beta: satake.beta,
            eta_scale: libm::pow(p as f64, form.weight() as f64 / 2.0),
        })
    }

    fn eval(&self, which: Gamma0Function, z: Complex64) -> Result<Complex64> {
        let f = |w| evaluate_level1_form(self.form, w, SERIES_TOL);
        Ok(match which {
            Gamma0Function::Plain => f(z)?,
            Gamma0Function::Stabilized => f(z)? - self.beta * f(z * self.p as f64)?,
            Gamma0Function::Eta => f(z * self.p as f64)? * self.eta_scale,
        })
    }

    /// `(g|γ)(z)` for coset `None` (identity) or `Some(j)`: `γ = [[0,−1],[1,j]]`.
    fn slashed(
        &self,
        which: Gamma0Function,
        coset: Option<u64>,
        z: Complex64,
    ) -> Result<Complex64> {
        match coset {
            None => self.eval(which, z),
            Some(j) => {
                let d = z + j as f64;
                Ok(self.eval(which, -d.inv())? * d.powi(-(self.form.weight() as i32)))
            }
        }
    }
}

/// `⟨g, h⟩` over `Γ₀(p)` as the sum over the `p + 1` cosets of integrals
/// over `F`.
pub fn petersson_pairing_gamma0p(
    form: &LevelOneForm,
    p: u64,
    left: Gamma0Function,
    right: Gamma0Function,
    mesh: Mesh,
    tolerance: f64,
) -> Result<QuadratureResult> {
    let level = LevelP::new(form, p)?;
    let cosets: Vec<Option<u64>> = core::iter::once(None).chain((0..p).map(Some)).collect();
    let weight_power = form.weight() as f64 - 2.0;
    // the cusp at 0 has width p, so its images decay p times slower
    let height = LEVEL_ONE_HEIGHT * p as f64;
    with_refinement(mesh, height, tolerance, |z| {
        let mut sum = Complex64::new(0.0, 0.0);
        for &coset in &cosets {
            let g = level.slashed(left, coset, z)?;
            let h = if right == left {
                g
            } else {
                level.slashed(right, coset, z)?
            };
            sum += g * h.conj();
        }
        Ok(sum * libm::pow(z.im, weight_power))
    })
}

pub fn petersson_norm_gamma0p(
    form: &LevelOneForm,
    p: u64,
    variant: Gamma0Function,
    mesh: Mesh,
    tolerance: f64,
) -> Result<QuadratureResult> {
    petersson_pairing_gamma0p(form, p, variant, variant, mesh, tolerance)
}
