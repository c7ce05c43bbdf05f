//! Thread-pool evaluation with in-order reduction.
//!
//! Work items are computed independently on the pool and then folded in
//! their original order, so results do not depend on the thread count.

use rayon::prelude::*;
use rayon::ThreadPool;
use stabnorm_core::euler::{
    check_edge_or_right, EulerAccumulator, EulerFactorSpec, PartialProductState,
};
use stabnorm_core::forms::ntt::NTT_PRIMES;
use stabnorm_core::forms::{
    delta_coefficients, CoefficientTable, DeltaResidues, MULTIMODULAR_MAX_N,
};
use stabnorm_core::Complex64;

use crate::error::{CliError, CliResult};

/// Below this size the pentagonal recurrence is cheaper than five transforms.
const SMALL_DELTA_TABLE: usize = 2_000;

pub fn thread_pool(threads: usize) -> CliResult<ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Resource(format!("cannot start {threads} worker threads: {e}")))
}

/// `τ(1..=max_n)`, with one worker per NTT modulus.
pub fn delta_table(pool: &ThreadPool, max_n: usize) -> CliResult<CoefficientTable> {
    if max_n <= SMALL_DELTA_TABLE {
        return Ok(delta_coefficients(max_n)?);
    }
    if max_n > MULTIMODULAR_MAX_N {
        return Err(CliError::Resource(format!(
            "coefficient table of {max_n} entries exceeds the supported {MULTIMODULAR_MAX_N}"
        )));
    }
    let parts: Vec<DeltaResidues> = pool.install(|| {
        NTT_PRIMES
            .par_iter()
            .map(|&p| DeltaResidues::compute(p, max_n))
            .collect()
    });
    Ok(DeltaResidues::combine(&parts)?)
}

/// Partial products at each cutoff. Local factors are evaluated on the pool
/// and accumulated in stream order.
pub fn partial_products(
    pool: &ThreadPool,
    factors: &[EulerFactorSpec],
    s: Complex64,
    cutoffs: &[f64],
) -> CliResult<Vec<PartialProductState>> {
    check_edge_or_right(s)?;
    let logs: Vec<Complex64> =
        pool.install(|| factors.par_iter().map(|f| f.log_factor(s)).collect());
    let mut acc = EulerAccumulator::new(s);
    let mut states = Vec::with_capacity(cutoffs.len());
    let mut pending = cutoffs.iter().copied().peekable();
    for (factor, log) in factors.iter().zip(logs) {
        while let Some(cutoff) = pending.next_if(|&c| (factor.norm() as f64) > c) {
            states.push(acc.state(cutoff));
        }
        acc.push_log(factor.norm(), log)?;
    }
    states.extend(pending.map(|c| acc.state(c)));
    Ok(states)
}
