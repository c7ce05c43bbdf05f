//! One function per subcommand. Each returns a [`Report`] holding the rows
//! already written and a one-line summary for the terminal.

use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::ThreadPool;
use serde::Serialize;
use serde_json::json;
use stabnorm_core::euler::{
    cm32_ideal_factors, cm32_rational_factors, rearrangement_gap, standard_to_normalized,
    sym2_factors, sym2_to_normalized, EulerFactorSpec,
};
use stabnorm_core::forms::{
    cm32_coefficients, satake_parameters, CoefficientTable, EigenformSpec, FormSource,
};
use stabnorm_core::reference::{
    global_factorization_check, petersson_norm_gamma0p, petersson_norm_level1,
    petersson_pairing_gamma0p, smoothed_dirichlet_value, Continuation, Gamma0Function, HidaBridge,
    LevelOneForm, Mesh, QuadratureResult, TABLE_PER_SCALE,
};
use stabnorm_core::stabilization::{exact, stabilization_limit_table, StabilizationReport};
use stabnorm_core::{Complex64, Error as CoreError};

use crate::config::{Command, Field, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{write_table, Table};
use crate::parallel::{delta_table, partial_products, thread_pool};

/// Conductor 32 example values and the reference value each should match.
pub const EXAMPLE_TARGETS: [(&str, f64); 3] = [
    ("L(E,3/2) smoothed", 0.826348),
    ("rational primes, x = 1e5", 0.826290),
    ("Gaussian ideals, x = 1e5", 0.826480),
];
pub const EXAMPLE_TOLERANCE: f64 = 2e-6;
const EXAMPLE_CUTOFF: f64 = 1e5;
const EXAMPLE_SCALES: [f64; 3] = [2e3, 4e3, 8e3];

const IDENTITY_TOL: f64 = 1e-11;
const SATAKE_TOL: f64 = 1e-9;
const QUADRATURE_RATIO_TOL: f64 = 1e-5;
const LEVEL_ONE_TOL: f64 = 1e-9;
const GAMMA0_TOL: f64 = 1e-8;
const CROSS_TOL: f64 = 1e-6;
const DELTA_SERIES_TERMS: usize = 64;

pub struct Report {
    pub path: PathBuf,
    pub summary: String,
}

pub fn dispatch(config: &RunConfig) -> CliResult<Report> {
    let start = Instant::now();
    let pool = thread_pool(config.threads)?;
    let ctx = Context {
        config,
        pool: &pool,
        start,
    };
    match config.command {
        Command::Coeffs => coeffs(&ctx),
        Command::Satake => satake(&ctx),
        Command::Stabilize => stabilize(&ctx),
        Command::Euler => euler(&ctx),
        Command::Sym2 => sym2(&ctx),
        Command::Petersson => petersson(&ctx),
        Command::Hida => hida(&ctx),
        Command::AppendixExample => appendix_example(&ctx),
        Command::Factorize => factorize(&ctx),
    }
}

struct Context<'a> {
    config: &'a RunConfig,
    pool: &'a ThreadPool,
    start: Instant,
}

impl Context<'_> {
    fn form(&self) -> EigenformSpec {
        self.config.form
    }

    fn finish<R: Serialize>(&self, table: Table<R>, summary: String) -> CliResult<Report> {
        let elapsed = (!self.config.deterministic).then(|| self.start.elapsed().as_secs_f64());
        let path = write_table(self.config, &table, elapsed)?;
        Ok(Report { path, summary })
    }

    fn coefficients(&self, max_n: usize) -> CliResult<CoefficientTable> {
        match self.form().source() {
            FormSource::DeltaLevel1 => delta_table(self.pool, max_n),
            FormSource::Cm32Curve => Ok(cm32_coefficients(max_n)?),
        }
    }

    fn require_delta(&self) -> CliResult<()> {
        if self.form() != EigenformSpec::delta() {
            return Err(CliError::usage(format!(
                "{} needs --form delta (quadrature is implemented for level one)",
                self.config.command.name()
            )));
        }
        Ok(())
    }

    fn cutoffs(&self, default: &[u64]) -> Vec<u64> {
        self.config
            .cutoffs
            .clone()
            .unwrap_or_else(|| default.to_vec())
    }
}

fn inconsistent(what: &'static str, lhs: f64, rhs: f64) -> CliError {
    CliError::Numeric(CoreError::Inconsistent { what, lhs, rhs })
}

fn lambda_at(table: &CoefficientTable, p: u64) -> CliResult<(BigInt, f64)> {
    let exact = table
        .get(p as usize)
        .cloned()
        .ok_or(CoreError::IncompleteSource { prime: p })?;
    let approx = exact
        .to_f64()
        .ok_or(CoreError::Domain("coefficient not representable as f64"))?;
    Ok((exact, approx))
}

#[derive(Serialize)]
struct CoefficientRow {
    n: usize,
    a_n: String,
}

fn coeffs(ctx: &Context) -> CliResult<Report> {
    let max_n = ctx.config.max_n.unwrap_or(100);
    let table = ctx.coefficients(max_n)?;
    let rows: Vec<CoefficientRow> = table
        .iter()
        .map(|(n, a)| CoefficientRow {
            n,
            a_n: a.to_string(),
        })
        .collect();
    let summary = format!("coeffs: a_1..a_{max_n} of {:?}", ctx.form().source());
    ctx.finish(
        Table {
            rows,
            parameters: json!({ "max_n": max_n }),
            summary: json!({}),
        },
        summary,
    )
}

#[derive(Serialize)]
struct SatakeRow {
    p: u64,
    lambda: String,
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    chi1_re: f64,
    chi1_im: f64,
    chi2_re: f64,
    chi2_im: f64,
    max_residual: f64,
}

fn good_primes(ctx: &Context) -> CliResult<Vec<u64>> {
    let form = ctx.form();
    if let Some(p) = ctx.config.prime {
        if !stabnorm_core::arith::is_prime(p) {
            return Err(CliError::usage(format!(
                "invalid value '{p}' for --prime: not a prime"
            )));
        }
        if form.is_bad_prime(p) {
            return Err(CliError::usage(format!(
                "--prime {p} divides the level {}",
                form.level()
            )));
        }
        return Ok(vec![p]);
    }
    let limit = ctx.config.limit.unwrap_or(100);
    Ok(stabnorm_core::primes::rational_primes(limit)
        .into_iter()
        .filter(|&p| !form.is_bad_prime(p))
        .collect())
}

fn satake(ctx: &Context) -> CliResult<Report> {
    let primes = good_primes(ctx)?;
    let max_p = primes.last().copied().unwrap_or(2).max(2);
    let table = ctx.coefficients(max_p as usize)?;
    let weight = ctx.form().weight();
    let mut rows = Vec::with_capacity(primes.len());
    let mut worst = 0.0f64;
    for p in primes {
        let (exact, lambda) = lambda_at(&table, p)?;
        let s = satake_parameters(lambda, p, weight)?;
        let max_residual = s.residuals().into_iter().fold(0.0, f64::max);
        if max_residual > SATAKE_TOL {
            return Err(inconsistent("Satake relations", max_residual, SATAKE_TOL));
        }
        worst = worst.max(max_residual);
        rows.push(SatakeRow {
            p,
            lambda: exact.to_string(),
            alpha_re: s.alpha.re,
            alpha_im: s.alpha.im,
            beta_re: s.beta.re,
            beta_im: s.beta.im,
            chi1_re: s.chi1.re,
            chi1_im: s.chi1.im,
            chi2_re: s.chi2.re,
            chi2_im: s.chi2.im,
            max_residual,
        });
    }
    let summary = format!(
        "satake: {} primes, largest relation residual {worst:.2e}",
        rows.len()
    );
    ctx.finish(
        Table {
            rows,
            parameters: json!({ "weight": weight }),
            summary: json!({ "max_residual": worst }),
        },
        summary,
    )
}

#[derive(Serialize)]
struct StabilizeRow {
    p: u64,
    kappa: u32,
    lambda: String,
    up_ratio: f64,
    stab_ratio: f64,
    adelic_norm: f64,
    local_period: f64,
    bridge_residual: f64,
    period_residual: f64,
    up_ratio_exact: String,
    stab_ratio_exact: String,
    adelic_norm_exact: String,
    local_period_exact: String,
}

#[derive(Serialize)]
struct LimitOutRow {
    p: u64,
    stab_ratio: f64,
    deviation: f64,
    envelope: f64,
    /// `p·|stab_ratio − 1|`
    scaled_deviation: f64,
}

fn stabilize(ctx: &Context) -> CliResult<Report> {
    if ctx.config.prime.is_some() {
        stabilize_at_prime(ctx)
    } else {
        stabilize_limit(ctx)
    }
}

fn stabilize_at_prime(ctx: &Context) -> CliResult<Report> {
    let p = good_primes(ctx)?[0];
    let kappa = ctx.form().weight();
    let table = ctx.coefficients((p as usize).max(2))?;
    let (exact_lambda, lambda) = lambda_at(&table, p)?;
    let report = StabilizationReport::compute(lambda, p, kappa)?;
    if report.bridge_residual > IDENTITY_TOL {
        return Err(inconsistent(
            "U_p norm bridge",
            report.bridge_residual,
            IDENTITY_TOL,
        ));
    }
    if report.period_residual > IDENTITY_TOL {
        return Err(inconsistent(
            "local period inverse",
            report.period_residual,
            IDENTITY_TOL,
        ));
    }
    let stab_exact = exact::stabilized_norm_ratio(&exact_lambda, p, kappa)?;
    let stab_expanded = exact::stabilized_norm_ratio_expanded(&exact_lambda, p, kappa)?;
    if stab_exact != stab_expanded {
        return Err(inconsistent("exact stabilized ratio forms", 0.0, 1.0));
    }
    let adelic_exact = exact::adelic_up_norm(&exact_lambda, p, kappa)?;
    if adelic_exact != exact::adelic_up_norm_raw(&exact_lambda, p, kappa)? {
        return Err(inconsistent("exact adelic norm forms", 0.0, 1.0));
    }
    let row = StabilizeRow {
        p,
        kappa,
        lambda: exact_lambda.to_string(),
        up_ratio: report.up_ratio,
        stab_ratio: report.stab_ratio,
        adelic_norm: report.adelic_norm,
        local_period: report.local_period,
        bridge_residual: report.bridge_residual,
        period_residual: report.period_residual,
        up_ratio_exact: exact::up_norm_ratio(&exact_lambda, p, kappa)?.to_string(),
        stab_ratio_exact: stab_exact.to_string(),
        adelic_norm_exact: adelic_exact.to_string(),
        local_period_exact: exact::local_period(&exact_lambda, p, kappa)?.to_string(),
    };
    let summary = format!(
        "stabilize: p = {p}, U_p ratio {}, stabilized ratio {} = {}",
        row.up_ratio, row.stab_ratio, row.stab_ratio_exact
    );
    ctx.finish(
        Table {
            rows: vec![row],
            parameters: json!({ "p": p }),
            summary: json!({}),
        },
        summary,
    )
}

fn stabilize_limit(ctx: &Context) -> CliResult<Report> {
    let limit = ctx.config.limit.unwrap_or(1000);
    let form = ctx.form();
    let table = ctx.coefficients(limit.max(2) as usize)?;
    let rows: Vec<LimitOutRow> = stabilization_limit_table(&form, &table, limit)?
        .into_iter()
        .map(|r| LimitOutRow {
            p: r.p,
            stab_ratio: r.stab_ratio,
            deviation: r.deviation,
            envelope: r.envelope(),
            scaled_deviation: r.p as f64 * r.deviation,
        })
        .collect();
    if let Some(bad) = rows.iter().find(|r| r.deviation > r.envelope) {
        return Err(inconsistent(
            "stabilized ratio envelope",
            bad.deviation,
            bad.envelope,
        ));
    }
    let worst = rows
        .iter()
        .map(|r| r.deviation / r.envelope)
        .fold(0.0, f64::max);
    let summary = format!(
        "stabilize: {} primes up to {limit}, largest deviation/envelope {worst:.4}",
        rows.len()
    );
    ctx.finish(
        Table {
            rows,
            parameters: json!({ "limit": limit }),
            summary: json!({ "max_envelope_fraction": worst }),
        },
        summary,
    )
}

#[derive(Serialize)]
struct ProductRow {
    cutoff: u64,
    factor_count: u64,
    re: f64,
    im: f64,
    abs_error: Option<f64>,
    rel_error: Option<f64>,
    gap: Option<f64>,
}

fn product_rows(
    ctx: &Context,
    factors: &[EulerFactorSpec],
    s: Complex64,
    cutoffs: &[u64],
    reference: Option<f64>,
    with_gap: bool,
) -> CliResult<Vec<ProductRow>> {
    let as_f64: Vec<f64> = cutoffs.iter().map(|&c| c as f64).collect();
    let states = partial_products(ctx.pool, factors, s, &as_f64)?;
    let mut rows = Vec::with_capacity(states.len());
    for (&cutoff, state) in cutoffs.iter().zip(states) {
        let value = state.value();
        let gap = with_gap
            .then(|| rearrangement_gap(factors, s, cutoff as f64))
            .transpose()?;
        rows.push(ProductRow {
            cutoff,
            factor_count: state.factor_count,
            re: value.re,
            im: value.im,
            abs_error: reference.map(|r| (value - r).norm()),
            rel_error: reference.map(|r| (value - r).norm() / r.abs()),
            gap,
        });
    }
    Ok(rows)
}

fn euler(ctx: &Context) -> CliResult<Report> {
    if ctx.form() != EigenformSpec::cm32() {
        return Err(CliError::usage(
            "euler evaluates the conductor 32 curve; use sym2 for --form delta",
        ));
    }
    let cutoffs = ctx.cutoffs(&[1_000, 10_000, 100_000]);
    let last = *cutoffs.last().expect("cutoffs are nonempty");
    let s_classical = ctx.config.s.unwrap_or(Complex64::new(1.5, 0.0));
    let s = standard_to_normalized(s_classical, ctx.form().weight());
    let factors = match ctx.config.field {
        Field::Rational => cm32_rational_factors(last)?,
        Field::Gaussian => cm32_ideal_factors(last)?,
    };
    let with_gap = s.re > 0.5;
    let rows = product_rows(ctx, &factors, s, &cutoffs, ctx.config.reference, with_gap)?;
    let tail = rows.last().expect("one row per cutoff");
    let summary = format!(
        "euler: {:?} product at s = {s_classical}, x = {last}: {:.9}{:+.3e}i",
        ctx.config.field, tail.re, tail.im
    );
    ctx.finish(
        Table {
            rows,
            parameters: json!({
                "s": [s_classical.re, s_classical.im],
                "s_normalized": [s.re, s.im],
                "field": format!("{:?}", ctx.config.field).to_lowercase(),
                "reference": ctx.config.reference,
            }),
            summary: json!({}),
        },
        summary,
    )
}

fn level_one_norm(ctx: &Context) -> CliResult<QuadratureResult> {
    ctx.require_delta()?;
    let form = LevelOneForm::delta(DELTA_SERIES_TERMS)?;
    Ok(petersson_norm_level1(
        &form,
        Mesh::standard(),
        LEVEL_ONE_TOL,
    )?)
}

fn sym2(ctx: &Context) -> CliResult<Report> {
    let form = ctx.form();
    let weight = form.weight();
    let cutoffs = ctx.cutoffs(&[1_000, 10_000, 100_000, 1_000_000]);
    let last = *cutoffs.last().expect("cutoffs are nonempty");
    let s_classical = ctx.config.s.unwrap_or(Complex64::new(weight as f64, 0.0));
    let s = sym2_to_normalized(s_classical, weight);
    let reference = match ctx.config.reference {
        Some(r) => Some(r),
        None if form == EigenformSpec::delta()
            && s_classical == Complex64::new(weight as f64, 0.0) =>
        {
            let norm = level_one_norm(ctx)?;
            Some(HidaBridge::new(weight, 1, &[])?.value(norm.value)?)
        }
        None => None,
    };
    let table = ctx.coefficients(last as usize)?;
    let factors = sym2_factors(&table, &form, last)?;
    let rows = product_rows(ctx, &factors, s, &cutoffs, reference, false)?;
    let tail = rows.last().expect("one row per cutoff");
    let summary = match tail.rel_error {
        Some(e) => format!("sym2: x = {last}: {:.9}, relative gap {e:.3e}", tail.re),
        None => format!("sym2: x = {last}: {:.9}{:+.3e}i", tail.re, tail.im),
    };
    ctx.finish(
        Table {
            rows,
            parameters: json!({
                "s": [s_classical.re, s_classical.im],
                "s_normalized": [s.re, s.im],
                "reference": reference,
            }),
            summary: json!({}),
        },
        summary,
    )
}

#[derive(Serialize)]
struct PeterssonRow {
    quantity: &'static str,
    value: f64,
    error_estimate: f64,
    ratio: Option<f64>,
    expected: Option<f64>,
    deviation: Option<f64>,
}

impl PeterssonRow {
    fn plain(quantity: &'static str, q: &QuadratureResult) -> Self {
        PeterssonRow {
            quantity,
            value: q.value,
            error_estimate: q.error_estimate,
            ratio: None,
            expected: None,
            deviation: None,
        }
    }

    /// Relative deviation for nonzero `expected`, absolute otherwise.
    fn compared(quantity: &'static str, q: &QuadratureResult, base: f64, expected: f64) -> Self {
        let ratio = q.value / base;
        let deviation = if expected == 0.0 {
            ratio.abs()
        } else {
            (ratio / expected - 1.0).abs()
        };
        PeterssonRow {
            ratio: Some(ratio),
            expected: Some(expected),
            deviation: Some(deviation),
            ..PeterssonRow::plain(quantity, q)
        }
    }
}

fn petersson(ctx: &Context) -> CliResult<Report> {
    let level1 = level_one_norm(ctx)?;
    let level = ctx.config.level.unwrap_or(1);
    let mut rows = vec![PeterssonRow::plain("level_one", &level1)];
    if level != 1 {
        if level != 2 && level != 3 {
            return Err(CliError::usage(format!(
                "invalid value '{level}' for --level: expected 1, 2 or 3"
            )));
        }
        let p = level;
        let f = LevelOneForm::delta(DELTA_SERIES_TERMS)?;
        let mesh = Mesh::standard();
        let lambda = f.coefficient(p as usize).expect("series holds a_p");
        let kappa = f.weight();
        let plain = petersson_norm_gamma0p(&f, p, Gamma0Function::Plain, mesh, GAMMA0_TOL)?;
        let stabilized =
            petersson_norm_gamma0p(&f, p, Gamma0Function::Stabilized, mesh, GAMMA0_TOL)?;
        let cross = petersson_pairing_gamma0p(
            &f,
            p,
            Gamma0Function::Eta,
            Gamma0Function::Plain,
            mesh,
            CROSS_TOL,
        )?;
        let satake = satake_parameters(lambda, p, kappa)?;
        let stab_expected = stabnorm_core::stabilization::stabilized_norm_ratio(&satake)?;
        let pf = p as f64;
        let eta_expected = lambda / ((pf + 1.0) * pf.powf(kappa as f64 / 2.0 - 1.0));
        rows.push(PeterssonRow::compared(
            "gamma0_plain",
            &plain,
            level1.value,
            pf + 1.0,
        ));
        rows.push(PeterssonRow::compared(
            "gamma0_stabilized",
            &stabilized,
            plain.value,
            stab_expected,
        ));
        rows.push(PeterssonRow::compared(
            "gamma0_eta_cross",
            &cross,
            plain.value,
            eta_expected,
        ));
        for row in &rows[1..] {
            let deviation = row.deviation.expect("compared rows carry a deviation");
            if deviation > QUADRATURE_RATIO_TOL {
                return Err(inconsistent(
                    "quadrature ratio",
                    row.ratio.unwrap_or(f64::NAN),
                    row.expected.unwrap_or(f64::NAN),
                ));
            }
        }
    }
    let summary = match rows.get(2) {
        Some(stab) => format!(
            "petersson: <Δ,Δ> = {:.9e}; level {level} stabilized ratio {:.8} (expected {:.8})",
            level1.value,
            stab.ratio.unwrap_or(f64::NAN),
            stab.expected.unwrap_or(f64::NAN)
        ),
        None => format!(
            "petersson: <Δ,Δ> = {:.9e} ± {:.1e}",
            level1.value, level1.error_estimate
        ),
    };
    ctx.finish(
        Table {
            rows,
            parameters: json!({ "level": level, "mesh": Mesh::standard() }),
            summary: json!({ "level_one_norm": level1.value }),
        },
        summary,
    )
}

#[derive(Serialize)]
struct HidaRow {
    kappa: u32,
    level: u64,
    petersson_norm: f64,
    petersson_error: f64,
    constant: f64,
    euler_correction: f64,
    l_value: f64,
}

fn hida(ctx: &Context) -> CliResult<Report> {
    let norm = level_one_norm(ctx)?;
    let form = ctx.form();
    let bridge = HidaBridge::new(form.weight(), form.level(), &[])?;
    let l_value = bridge.value(norm.value)?;
    let row = HidaRow {
        kappa: bridge.kappa,
        level: bridge.level,
        petersson_norm: norm.value,
        petersson_error: norm.error_estimate,
        constant: bridge.constant,
        euler_correction: bridge.euler_correction,
        l_value,
    };
    let summary = format!(
        "hida: <Δ,Δ> = {:.9e}, L(12, Sym² Δ) = {l_value:.9}",
        norm.value
    );
    ctx.finish(
        Table {
            rows: vec![row],
            parameters: json!({}),
            summary: json!({}),
        },
        summary,
    )
}

#[derive(Serialize)]
struct ExampleRow {
    quantity: &'static str,
    value: f64,
    target: f64,
    deviation: f64,
    tolerance: f64,
}

/// The three conductor 32 values: smoothed `L(3/2)` and the two ordered
/// partial products at `x = 10⁵`.
pub fn conductor32_example_values() -> CliResult<[f64; 3]> {
    let largest = EXAMPLE_SCALES[EXAMPLE_SCALES.len() - 1];
    let table = cm32_coefficients((TABLE_PER_SCALE * largest) as usize)?.to_f64();
    let s = Complex64::new(1.5, 0.0);
    let smoothed =
        smoothed_dirichlet_value(&table, s, &EXAMPLE_SCALES, Continuation::Entire, 1e-7)?;
    if !smoothed.converged {
        return Err(CliError::Numeric(CoreError::AccuracyNotReached {
            estimate: smoothed.error_estimate,
            requested: 1e-7,
        }));
    }
    let edge = standard_to_normalized(s, 2);
    let cutoff = EXAMPLE_CUTOFF as u64;
    let rational = stabnorm_core::euler::partial_euler_product(
        &cm32_rational_factors(cutoff)?,
        edge,
        EXAMPLE_CUTOFF,
    )?;
    let ideals = stabnorm_core::euler::partial_euler_product(
        &cm32_ideal_factors(cutoff)?,
        edge,
        EXAMPLE_CUTOFF,
    )?;
    Ok([smoothed.value.re, rational.value().re, ideals.value().re])
}

fn appendix_example(ctx: &Context) -> CliResult<Report> {
    let values = conductor32_example_values()?;
    let rows: Vec<ExampleRow> = EXAMPLE_TARGETS
        .iter()
        .zip(values)
        .map(|(&(quantity, target), value)| ExampleRow {
            quantity,
            value,
            target,
            deviation: (value - target).abs(),
            tolerance: EXAMPLE_TOLERANCE,
        })
        .collect();
    println!(
        "{:<28} {:>10} {:>10} {:>10}",
        "quantity", "computed", "target", "deviation"
    );
    for r in &rows {
        println!(
            "{:<28} {:>10.6} {:>10.6} {:>10.1e}",
            r.quantity, r.value, r.target, r.deviation
        );
    }
    if let Some(r) = rows.iter().find(|r| r.deviation > r.tolerance) {
        return Err(inconsistent(
            "conductor 32 example value",
            r.value,
            r.target,
        ));
    }
    let summary = format!(
        "appendix-example: {:.6} / {:.6} / {:.6}",
        values[0], values[1], values[2]
    );
    ctx.finish(
        Table {
            rows,
            parameters: json!({ "cutoff": EXAMPLE_CUTOFF, "smoothing_scales": EXAMPLE_SCALES }),
            summary: json!({}),
        },
        summary,
    )
}

fn factorize(ctx: &Context) -> CliResult<Report> {
    let norm = level_one_norm(ctx)?;
    let form = ctx.form();
    let cutoffs = ctx.cutoffs(&[1_000, 10_000, 100_000, 1_000_000]);
    let last = *cutoffs.last().expect("cutoffs are nonempty");
    let table = ctx.coefficients(last as usize)?;
    let report = global_factorization_check(&form, &table, norm.value, &cutoffs)?;
    if let Some(row) = report
        .rows
        .iter()
        .find(|r| r.identity_residual > IDENTITY_TOL)
    {
        return Err(inconsistent(
            "finite local period identity",
            row.identity_residual,
            IDENTITY_TOL,
        ));
    }
    let tail = report.rows.last().expect("one row per cutoff");
    let summary = format!(
        "factorize: <Δ,Δ> = {:.9e}, rebuilt at x = {last}: {:.9e} (relative gap {:.3e})",
        norm.value, tail.rhs, tail.relative_gap
    );
    ctx.finish(
        Table {
            rows: report.rows.clone(),
            parameters: json!({ "cutoffs": cutoffs }),
            summary: json!({ "petersson_norm": report.petersson_norm, "zeta_target": report.zeta_target }),
        },
        summary,
    )
}
