//! Average-degree estimation: order vertices by (degree, id), sample
//! `X = 2d_v·[v ≺ u]` for a random neighbor `u` of a random vertex `v`,
//! and wrap the sampler in a min-of-runs geometric search for m.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::GraphError;
use crate::graph::{QueryChannel, QueryGraph, QueryLedger};
use crate::math;
use crate::params::{Profile, SearchOptions};
use crate::rng::{mix_all, rng_from};

const AVG_STREAM: u64 = 0x61766764;

/// The total order: `u ≺ v` iff `d_u < d_v`, or `d_u = d_v` and `u < v`.
/// Costs two degree queries (memoizable).
pub fn precedes(
    chan: &mut QueryChannel<'_>,
    u: usize,
    v: usize,
) -> Result<bool, GraphError> {
    let d_u = chan.degree(u)?;
    let d_v = chan.degree(v)?;
    Ok(d_u < d_v || (d_u == d_v && u < v))
}

/// Number of neighbors of `v` above it in the order, from the raw graph.
/// Test-side oracle; the estimator never materializes it.
pub fn exact_d_plus(graph: &QueryGraph, v: usize) -> usize {
    let d_v = graph.degree_of(v);
    graph
        .neighbors(v)
        .iter()
        .filter(|&&u| {
            let d_u = graph.degree_of(u);
            d_v < d_u || (d_v == d_u && v < u)
        })
        .count()
}

/// One sample with mean exactly 2m/n. An isolated vertex yields 0, which
/// keeps the mean exact since it contributes nothing to `Σ d⁺_v`.
pub fn degree_sample<R: Rng + ?Sized>(
    chan: &mut QueryChannel<'_>,
    rng: &mut R,
) -> Result<f64, GraphError> {
    let v = chan.uniform_vertex(rng)?;
    let d_v = chan.degree(v)?;
    if d_v == 0 {
        return Ok(0.0);
    }
    let i = rng.gen_range(0..d_v);
    let u = chan.neighbor(v, i)?;
    let d_u = chan.degree(u)?;
    if d_v < d_u || (d_v == d_u && v < u) {
        Ok(2.0 * d_v as f64)
    } else {
        Ok(0.0)
    }
}

/// Mean of `avg_samples(eps, n, m̂)` independent degree samples.
pub fn avg_degree_once<R: Rng + ?Sized>(
    chan: &mut QueryChannel<'_>,
    m_hat: u64,
    eps: f64,
    profile: Profile,
    rng: &mut R,
) -> Result<f64, GraphError> {
    let s = profile.avg_samples(eps, chan.n(), m_hat);
    let mut sum = 0.0;
    for _ in 0..s {
        sum += degree_sample(chan, rng)?;
    }
    Ok(sum / s as f64)
}

/// Output of the full average-degree estimator.
#[derive(Debug, Clone)]
pub struct AvgDegreeReport {
    /// Estimated average degree.
    pub estimate: f64,
    /// Implied edge count `round(n·d̄/2)`; exact when `confirmed_by_scan`.
    pub m_hat: u64,
    /// `(m̂ guess, min-of-runs estimate)` per geometric-search step.
    pub guess_trace: Vec<(u64, f64)>,
    pub ledger: QueryLedger,
    /// Largest single-run query spend, for sublinearity checks.
    pub max_run_queries: u64,
    /// True when the guesses bottomed out and a degree scan gave the
    /// exact answer.
    pub confirmed_by_scan: bool,
}

/// Geometric search over m̂ = n², n²/2, …: at each guess take the minimum
/// of several independent runs and accept once the implied edge count
/// reaches the guess.
pub fn estimate_avg_degree(
    graph: &QueryGraph,
    eps: f64,
    profile: Profile,
    master_seed: u64,
    options: &SearchOptions,
) -> Result<AvgDegreeReport, GraphError> {
    assert!(eps > 0.0 && eps < 1.0, "eps must be in (0, 1)");
    let n = graph.n();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut chan = QueryChannel::new(graph).memoize_degrees();
    let runs = profile.min_runs(eps, n);
    let mut guess_trace = Vec::new();
    let mut max_run_queries = 0u64;
    let mut m_hat = (n as u64) * (n as u64);
    let mut guess_idx = 0u64;
    loop {
        let mut best = f64::INFINITY;
        for run in 0..runs as u64 {
            let mut rng = rng_from(mix_all(master_seed, &[AVG_STREAM, guess_idx, run]));
            let before = chan.ledger().total();
            let est = avg_degree_once(&mut chan, m_hat, eps, profile, &mut rng)?;
            max_run_queries = max_run_queries.max(chan.ledger().total() - before);
            best = best.min(est);
        }
        guess_trace.push((m_hat, best));
        let implied = (n as f64) * best / 2.0;
        let reached = implied >= m_hat as f64;
        let accept = if options.accept_when_estimate_reaches_guess {
            reached
        } else {
            !reached
        };
        if accept {
            return Ok(AvgDegreeReport {
                estimate: best,
                m_hat: math::round(implied).max(1.0) as u64,
                guess_trace,
                ledger: *chan.ledger(),
                max_run_queries,
                confirmed_by_scan: false,
            });
        }
        m_hat /= 2;
        guess_idx += 1;
        if m_hat == 0 {
            // Bottomed out: read every degree and answer exactly.
            let mut sum = 0u64;
            for v in 0..n {
                sum += chan.degree(v)? as u64;
            }
            let exact = sum as f64 / n as f64;
            return Ok(AvgDegreeReport {
                estimate: exact,
                m_hat: sum / 2,
                guess_trace,
                ledger: *chan.ledger(),
                max_run_queries,
                confirmed_by_scan: true,
            });
        }
    }
}
