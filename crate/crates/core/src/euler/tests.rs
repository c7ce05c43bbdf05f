use super::*;
use crate::forms::{
    cm32_coefficients, curve_ap, delta_coefficients, satake_parameters, EigenformSpec,
};
use crate::primes::{cornacchia_two_squares, rational_primes};
use alloc::vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const EDGE: Complex64 = Complex64::new(1.0, 0.0);

#[test]
fn log_one_minus_matches_complex_log() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let w = c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.4..0.4));
        let expected = (1.0 - w).ln();
        assert!((log_one_minus(w) - expected).norm() < 1e-14);
    }
    // small arguments keep full relative accuracy
    let w = c(1e-17, -3e-18);
    assert!((log_one_minus(w) + w).norm() < 1e-32);
}

#[test]
fn empty_product_below_first_norm() {
    let factors = cm32_rational_factors(100).unwrap();
    let state = partial_euler_product(&factors, EDGE, 2.5).unwrap();
    assert_eq!(state.factor_count, 0);
    assert_eq!(state.log_value, c(0.0, 0.0));
    assert_eq!(state.value(), c(1.0, 0.0));
}

#[test]
fn edge_normalization_arithmetic() {
    assert_eq!(standard_to_normalized(c(1.5, 0.0), 2), EDGE);
    assert_eq!(sym2_to_normalized(c(12.0, 0.0), 12), EDGE);
}

#[test]
fn three_factor_product_by_hand() {
    let factors = cm32_rational_factors(10).unwrap();
    let state = partial_euler_product(&factors, EDGE, 10.0).unwrap();
    assert_eq!(state.factor_count, 3);
    let mut expected = 1.0;
    for p in [3.0f64, 5.0, 7.0] {
        let ap = curve_ap(p as u64).unwrap() as f64;
        expected /= 1.0 - ap * libm::pow(p, -1.5) + 1.0 / (p * p);
    }
    let v = state.value();
    assert!((v.re - expected).abs() < 1e-15 && v.im.abs() < 1e-15);
}

#[test]
fn conductor32_edge_products_at_1e5() {
    let rational = cm32_rational_factors(100_000).unwrap();
    let q = partial_euler_product(&rational, EDGE, 1e5).unwrap().value();
    assert!((q.re - 0.826290).abs() < 2e-6, "Q product {q}");
    assert!(q.im.abs() < 1e-12);
    let ideals = cm32_ideal_factors(100_000).unwrap();
    let z = partial_euler_product(&ideals, EDGE, 1e5).unwrap().value();
    assert!((z.re - 0.826480).abs() < 2e-6, "Z[i] product {z}");
    assert!(z.im.abs() < 1e-12);
}

#[test]
fn ordering_and_normalization_errors() {
    let a = EulerFactorSpec::new(5, &[c(0.5, 0.0)]).unwrap();
    let b = EulerFactorSpec::new(3, &[c(0.5, 0.0)]).unwrap();
    assert_eq!(
        partial_euler_product([&a, &b], EDGE, 10.0),
        Err(Error::OrderingViolation {
            previous: 5,
            next: 3
        })
    );
    assert!(matches!(
        EulerFactorSpec::new(3, &[c(1.0, 0.1)]),
        Err(Error::Normalization { norm: 3, .. })
    ));
    assert!(EulerFactorSpec::new(3, &[c(1.0 + 5e-11, 0.0)]).is_ok());
    assert!(matches!(
        partial_euler_product([&a], c(0.9, 0.0), 10.0),
        Err(Error::Domain(_))
    ));
}

#[test]
fn log_series_definition_instances() {
    let factors = vec![EulerFactorSpec::new(3, &[c(0.6, 0.8), c(0.6, -0.8)]).unwrap()];
    assert_eq!(
        log_series_partial(&factors, EDGE, 2.0).unwrap(),
        c(0.0, 0.0)
    );
    let two_terms = log_series_partial(&factors, EDGE, 9.0).unwrap();
    let expected = factors[0].prime_power_term(1, EDGE) + factors[0].prime_power_term(2, EDGE);
    assert!((two_terms - expected).norm() < 1e-16);
    // k = 1: 1.2/3, k = 2: (2·(0.36 − 0.64))/(2·9)
    assert!((two_terms.re - (0.4 - 0.56 / 18.0)).abs() < 1e-15);
}

#[test]
fn log_series_close_to_grouped_series() {
    let factors = cm32_rational_factors(10_000).unwrap();
    let series = log_series_partial(&factors, EDGE, 1e4).unwrap();
    let grouped = partial_euler_product(&factors, EDGE, 1e4)
        .unwrap()
        .log_value;
    assert!((series - grouped).norm() < 10.0 * 2.0 / 100.0);
}

#[test]
fn gap_at_three_is_tail_of_first_prime() {
    let factors = cm32_rational_factors(100).unwrap();
    let gap = rearrangement_gap(&factors, EDGE, 3.0).unwrap();
    let f3 = &factors[0];
    let tail = f3.log_factor(EDGE) - f3.prime_power_term(1, EDGE);
    assert!((gap - tail.norm()).abs() < 1e-16);
}

#[test]
fn gap_decreases_on_the_edge() {
    let factors = cm32_rational_factors(100_000).unwrap();
    let gaps: Vec<f64> = [1e3, 1e4, 1e5]
        .iter()
        .map(|&x| rearrangement_gap(&factors, EDGE, x).unwrap())
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    assert!(gaps[2] < 1e-2);
    for (&x, &gap) in [1e3f64, 1e4, 1e5].iter().zip(&gaps) {
        // loose envelope 40·d·x^{−1/2}·log x
        assert!(gap < 40.0 * 2.0 * libm::sqrt(x).recip() * libm::log(x));
    }
}

#[test]
fn degenerate_factors_have_no_gap() {
    let factors: Vec<_> = rational_primes(1000)
        .into_iter()
        .map(|p| EulerFactorSpec::new(p, &[c(0.0, 0.0)]).unwrap())
        .collect();
    assert_eq!(rearrangement_gap(&factors, EDGE, 1000.0).unwrap(), 0.0);
}

#[test]
fn convergence_table_error_column() {
    let factors = cm32_rational_factors(100_000).unwrap();
    let rows = convergence_table(&factors, EDGE, &[1e3, 1e4, 1e5], Some(0.826348)).unwrap();
    assert_eq!(rows.len(), 3);
    let last = rows[2].abs_error.unwrap();
    assert!((last - 5.8e-5).abs() < 2e-6, "error {last}");
    let direct = partial_euler_product(&factors, EDGE, 1e4).unwrap().value();
    assert_eq!(rows[1].value, direct);
    assert!(convergence_table(&factors, EDGE, &[1e4, 1e3], None).is_err());
}

#[test]
fn absolutely_convergent_product_matches_dirichlet_sum() {
    let s_standard = c(3.0, 0.0);
    let factors = cm32_rational_factors(10_000).unwrap();
    let product = partial_euler_product(&factors, standard_to_normalized(s_standard, 2), 1e4)
        .unwrap()
        .value();
    let table = cm32_coefficients(200_000).unwrap();
    let dirichlet: f64 = table
        .to_f64()
        .iter()
        .enumerate()
        .map(|(i, a)| a * libm::pow((i + 1) as f64, -3.0))
        .sum();
    assert!(
        (product.re - dirichlet).abs() < 1e-8,
        "{product} vs {dirichlet}"
    );
}

#[test]
fn sym2_factor_examples() {
    let s = satake_parameters(-24.0, 2, 12).unwrap();
    let v = sym2_local_factor(&s, c(12.0, 0.0)).unwrap();
    assert!((v.re - 1.0546875).abs() < 1e-14 && v.im.abs() < 1e-14);
    let far = sym2_local_factor(&s, c(200.0, 0.0)).unwrap();
    assert!((far - 1.0).norm() < 1e-50);
    for (p, kappa, s_val) in [(5u64, 12u32, 11.3), (13, 2, 1.7), (3, 6, 5.5)] {
        let zero = satake_parameters(0.0, p, kappa).unwrap();
        let x = libm::pow(p as f64, kappa as f64 - 1.0 - s_val);
        let expected = (1.0 + x) * (1.0 + x) * (1.0 - x);
        let got = sym2_local_factor(&zero, c(s_val, 0.0)).unwrap();
        assert!((got.re - expected).abs() < 1e-13 * expected && got.im.abs() < 1e-13);
    }
}

#[test]
fn sym2_normalization_shift() {
    let tau = delta_coefficients(200).unwrap();
    let factors = sym2_factors(&tau, &EigenformSpec::delta(), 200).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for factor in &factors {
        let lambda = tau.get(factor.norm() as usize).unwrap();
        let satake = satake_parameters(
            num_traits::ToPrimitive::to_f64(lambda).unwrap(),
            factor.norm(),
            12,
        )
        .unwrap();
        for _ in 0..5 {
            let s = c(rng.gen_range(11.0..20.0), rng.gen_range(-30.0..30.0));
            let weight_form = sym2_local_factor(&satake, s).unwrap();
            let normalized = factor.polynomial(s - 11.0);
            assert!((weight_form - normalized).norm() < 1e-12 * normalized.norm());
        }
    }
}

#[test]
fn conjugate_order_does_not_matter() {
    let ideals = cm32_ideal_factors(20_000).unwrap();
    let mut swapped = ideals.clone();
    let mut i = 0;
    while i + 1 < swapped.len() {
        if swapped[i].norm() == swapped[i + 1].norm() {
            swapped.swap(i, i + 1);
            i += 2;
        } else {
            i += 1;
        }
    }
    assert_ne!(ideals, swapped);
    for &x in &[10.0, 100.0, 1000.5, 20_000.0] {
        let a = partial_euler_product(&ideals, EDGE, x).unwrap().value();
        let b = partial_euler_product(&swapped, EDGE, x).unwrap().value();
        assert!((a - b).norm() <= 1e-15 * a.norm(), "x={x}: {a} vs {b}");
    }
}

#[test]
fn rational_factor_equals_product_over_ideals() {
    let rational = cm32_rational_factors(10_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for factor in &rational {
        let p = factor.norm();
        let ideals: Vec<EulerFactorSpec> = if p % 4 == 1 {
            let (a, b) = cornacchia_two_squares(p).unwrap();
            let sqrt_p = libm::sqrt(p as f64);
            [
                crate::primes::GaussianInt::new(a as i64, b as i64),
                crate::primes::GaussianInt::new(a as i64, -(b as i64)),
            ]
            .iter()
            .map(|g| {
                let chi = g.primary_associate().unwrap();
                EulerFactorSpec::new(p, &[c(chi.re as f64 / sqrt_p, chi.im as f64 / sqrt_p)])
                    .unwrap()
            })
            .collect()
        } else {
            // χ((p)) = −p, normalized by p
            vec![EulerFactorSpec::new(p * p, &[c(-1.0, 0.0)]).unwrap()]
        };
        for _ in 0..3 {
            let s = c(rng.gen_range(0.6..3.0), rng.gen_range(-50.0..50.0));
            let lhs = factor.polynomial(s);
            let rhs: Complex64 = ideals.iter().map(|f| f.polynomial(s)).product();
            assert!((lhs - rhs).norm() < 1e-12, "p={p}");
        }
    }
}
