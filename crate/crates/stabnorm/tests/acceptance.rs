//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabnorm::commands::{conductor32_example_values, EXAMPLE_TARGETS, EXAMPLE_TOLERANCE};
use stabnorm_core::euler::{
    cm32_ideal_factors, cm32_rational_factors, rearrangement_gap, EulerFactorSpec,
};
use stabnorm_core::forms::{
    curve_ap, curve_ap_via_character, curve_point_count, delta_coefficients_multimodular,
    hecke_char_value, satake_parameters, EigenformSpec,
};
use stabnorm_core::primes::{gaussian_ideals_by_norm, rational_primes, Splitting};
use stabnorm_core::reference::{
    global_factorization_check, petersson_norm_gamma0p, petersson_norm_level1,
    petersson_pairing_gamma0p, Gamma0Function, LevelOneForm, Mesh,
};
use stabnorm_core::stabilization::{
    adelic_up_norm, stabilization_limit_table, stabilized_norm_ratio, up_norm_ratio,
};
use stabnorm_core::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn list(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.2e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn conductor32_example() -> Outcome {
    let values = conductor32_example_values().map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (&(name, target), value) in EXAMPLE_TARGETS.iter().zip(values) {
        let dev = (value - target).abs();
        ok &= dev <= EXAMPLE_TOLERANCE;
        parts.push(format!(
            "{name}: {value:.7} (target {target}, |Δ| {dev:.1e})"
        ));
    }
    check(
        ok,
        format!("{}; tolerance {EXAMPLE_TOLERANCE:e}", parts.join("; ")),
    )
}

fn algebraic_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let primes = rational_primes(1000);
    let mut worst = [0.0f64; 4];
    for _ in 0..1000 {
        let p = primes[rng.gen_range(0..primes.len())];
        let kappa = 2 * rng.gen_range(1..=12u32);
        let bound = 2.0 * (p as f64).powf((kappa - 1) as f64 / 2.0);
        let lambda = rng.gen_range(-bound..=bound);
        let pf = p as f64;
        let s = satake_parameters(lambda, p, kappa).map_err(|e| e.to_string())?;
        let t2 = lambda * lambda / s.norm_power();

        let up = up_norm_ratio(lambda, p, kappa).map_err(|e| e.to_string())?;
        let up_from_satake = {
            let sum = s.alpha + s.beta;
            pf.powi(kappa as i32 - 2) + (pf - 1.0) * (sum * sum).re / (pf + 1.0)
        };
        worst[0] = worst[0].max(rel(up, up_from_satake));

        let stab = stabilized_norm_ratio(&s).map_err(|e| e.to_string())?;
        let product =
            (pf / (pf + 1.0)) * (1.0 - s.chi1 * s.chi1 / pf) * (1.0 - s.chi2 * s.chi2 / pf);
        worst[1] = worst[1]
            .max(rel(stab, 1.0 + 1.0 / pf - t2 / (pf + 1.0)))
            .max(rel(product.re, stab));

        let adelic = adelic_up_norm(&s).map_err(|e| e.to_string())?;
        let raw = (pf * pf - pf + 1.0) / (pf + 1.0) * s.chi1.norm_sqr()
            + pf * pf / (pf + 1.0) * s.chi2.norm_sqr()
            + (pf * pf - pf) / (pf + 1.0) * 2.0 * (s.chi1 * s.chi2.conj()).re;
        let closed = 1.0 + (pf - 1.0) * pf * t2 / (pf + 1.0);
        worst[2] = worst[2].max(rel(raw, closed)).max(rel(adelic, closed));

        worst[3] = worst[3].max(rel(up, pf.powi(kappa as i32 - 2) * adelic));
    }
    let ok = worst.iter().all(|&w| w <= 1e-11);
    check(
        ok,
        format!(
            "1000 samples; max rel. disagreement: U_p {:.1e}, stabilized {:.1e}, adelic {:.1e}, bridge {:.1e} (tol 1e-11)",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

fn quadrature() -> Outcome {
    let f = LevelOneForm::delta(64).map_err(|e| e.to_string())?;
    let mesh = Mesh::standard();
    let q = |r: stabnorm_core::Result<stabnorm_core::reference::QuadratureResult>| {
        r.map_err(|e| e.to_string())
    };
    let level1 = q(petersson_norm_level1(&f, mesh, 1e-9))?;
    let plain = q(petersson_norm_gamma0p(
        &f,
        2,
        Gamma0Function::Plain,
        mesh,
        1e-8,
    ))?;
    let stab = q(petersson_norm_gamma0p(
        &f,
        2,
        Gamma0Function::Stabilized,
        mesh,
        1e-8,
    ))?;
    let cross = q(petersson_pairing_gamma0p(
        &f,
        2,
        Gamma0Function::Eta,
        Gamma0Function::Plain,
        mesh,
        1e-6,
    ))?;
    let stab_dev = rel(stab.value / plain.value, 45.0 / 32.0);
    let scale_dev = rel(plain.value, 3.0 * level1.value);
    let eta_dev = (cross.value / plain.value + 0.25).abs();
    check(
        stab_dev <= 1e-5 && scale_dev <= 1e-6 && eta_dev <= 1e-5,
        format!(
            "stabilized/plain rel. dev {stab_dev:.1e} (tol 1e-5); Γ₀(2)/level one vs 3 rel. dev {scale_dev:.1e} (tol 1e-6); η ratio + 1/4 = {eta_dev:.1e} (tol 1e-5)"
        ),
    )
}

fn character_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let mut trace_from_ideals = std::collections::BTreeMap::<u64, i64>::new();
    for ideal in gaussian_ideals_by_norm(10_000, true) {
        if ideal.splitting == Splitting::Split {
            let chi = hecke_char_value(&ideal).map_err(|e| e.to_string())?;
            *trace_from_ideals.entry(ideal.norm).or_default() += chi.re;
        }
    }
    let primes: Vec<u64> = rational_primes(10_000)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    for &p in &primes {
        let legendre = curve_ap(p).map_err(|e| e.to_string())?;
        let counted = p as i64 - curve_point_count(p).map_err(|e| e.to_string())? as i64;
        let cornacchia = curve_ap_via_character(p).map_err(|e| e.to_string())?;
        let enumerated = if p % 4 == 1 {
            trace_from_ideals.get(&p).copied().unwrap_or(i64::MIN)
        } else {
            0
        };
        if legendre != counted || legendre != cornacchia || legendre != enumerated {
            failures.push(p);
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{} odd primes ≤ 1e4; Legendre sum, point count, Cornacchia and ideal-enumeration traces; failures: {failures:?}",
            primes.len()
        ),
    )
}

fn gaps(factors: &[EulerFactorSpec]) -> Result<Vec<f64>, String> {
    let edge = Complex64::new(1.0, 0.0);
    [1e3, 1e4, 1e5]
        .iter()
        .map(|&x| rearrangement_gap(factors, edge, x).map_err(|e| e.to_string()))
        .collect()
}

fn rearrangement() -> Outcome {
    let rational = gaps(&cm32_rational_factors(100_000).map_err(|e| e.to_string())?)?;
    let gaussian = gaps(&cm32_ideal_factors(100_000).map_err(|e| e.to_string())?)?;
    let good = |g: &[f64]| g[0] > g[1] && g[1] > g[2] && g[2] < 1e-2;
    check(
        good(&rational) && good(&gaussian),
        format!("gaps at 1e3/1e4/1e5: rational primes {}; Gaussian ideals {} (strictly decreasing, last < 1e-2)", list(&rational), list(&gaussian)),
    )
}

fn factorization() -> Outcome {
    let f = LevelOneForm::delta(64).map_err(|e| e.to_string())?;
    let norm = petersson_norm_level1(&f, Mesh::standard(), 1e-9).map_err(|e| e.to_string())?;
    let tau = delta_coefficients_multimodular(1_000_000).map_err(|e| e.to_string())?;
    let cutoffs = [1_000, 10_000, 100_000, 1_000_000];
    let report = global_factorization_check(&EigenformSpec::delta(), &tau, norm.value, &cutoffs)
        .map_err(|e| e.to_string())?;
    let identity = report.rows[0].identity_residual;
    let gaps: Vec<f64> = report.rows.iter().map(|r| r.relative_gap).collect();
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let last = gaps[gaps.len() - 1];
    check(
        identity <= 1e-11 && last < 5e-3 && decreasing,
        format!(
            "finite identity residual at 1e3 {identity:.1e} (tol 1e-11); relative gaps at 1e3..1e6 {} (decreasing, last < 5e-3)",
            list(&gaps)
        ),
    )
}

fn limit() -> Outcome {
    let tau = delta_coefficients_multimodular(10_000).map_err(|e| e.to_string())?;
    let rows = stabilization_limit_table(&EigenformSpec::delta(), &tau, 10_000)
        .map_err(|e| e.to_string())?;
    let outside: Vec<u64> = rows
        .iter()
        .filter(|r| r.deviation > r.envelope())
        .map(|r| r.p)
        .collect();
    let mean = |lo: u64, hi: u64| {
        let sel: Vec<f64> = rows
            .iter()
            .filter(|r| r.p >= lo && r.p < hi)
            .map(|r| r.deviation)
            .collect();
        sel.iter().sum::<f64>() / sel.len() as f64
    };
    let first = mean(2, 10);
    let last = mean(1_000, 10_000);
    check(
        outside.is_empty() && last < first,
        format!(
            "{} primes ≤ 1e4, outside envelope: {outside:?}; mean |stab − 1| for p < 10: {first:.3e}, for 1e3 ≤ p < 1e4: {last:.3e}",
            rows.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("conductor 32 example values", conductor32_example),
        ("algebraic identities on random samples", algebraic_suite),
        ("quadrature ratios at level two", quadrature),
        ("character trace equals point count", character_equivalence),
        ("rearrangement gap on the edge", rearrangement),
        ("local period factorization", factorization),
        ("stabilized ratio limit", limit),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
