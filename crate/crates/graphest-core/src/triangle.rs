//! The triangle-count estimator: degree-proportional vertex samples,
//! weighted triangle trials against the heavy/light labeling, min-of-runs
//! robustness, and the geometric search over the triangle guess t̂.

use alloc::vec::Vec;

use rand::Rng;

use crate::avgdeg;
use crate::error::GraphError;
use crate::graph::{QueryChannel, QueryGraph, QueryLedger};
use crate::heavy::{HeavyLabeler, Label};
use crate::math;
use crate::oracle;
use crate::params::{GuessContext, Profile, SearchOptions};
use crate::rng::{mix_all, rng_from};
use crate::sampler::DegreeProportionalSampler;

const TRI_STREAM: u64 = 0x7472_6961;
const AVG_PHASE: u64 = 0x6d68_6174;

/// Triangle weight `1/(2ℓ)` for ℓ light corners (0 when all three are
/// heavy), held exactly in twelfths: 0, 1/2, 1/4, 1/6 → 0, 6, 3, 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleWeight(u8);

impl TriangleWeight {
    pub fn from_light_count(light: usize) -> TriangleWeight {
        TriangleWeight(match light {
            0 => 0,
            1 => 6,
            2 => 3,
            3 => 2,
            _ => panic!("a triangle has at most 3 light corners"),
        })
    }

    #[inline]
    pub fn twelfths(&self) -> u8 {
        self.0
    }

    #[inline]
    pub fn as_f64(&self) -> f64 {
        self.0 as f64 / 12.0
    }
}

/// How to sample the far endpoint once the trial holds an edge whose
/// chosen endpoint has degree `d_u`: low-degree endpoints are kept with
/// probability `d_u/√m̂` and probed once at scale `√m̂`; high-degree ones
/// are probed `⌈d_u/√m̂⌉` times at scale `d_u`, averaged. Either way the
/// conditional mean is `Σ_{Δ ∈ T_e} wt(Δ)`.
fn draw_plan(d_u: usize, sqrt_m: f64) -> (usize, f64, f64) {
    let d = d_u as f64;
    if d <= sqrt_m {
        (1, sqrt_m, (d / sqrt_m).min(1.0))
    } else {
        (math::ceil(d / sqrt_m) as usize, d, 1.0)
    }
}

/// Outcome of a single trial.
#[derive(Debug, Clone, Copy)]
pub struct TrialOutcome {
    /// The trial value `Y`; conditioned on the sample `S`, its mean is
    /// `Σ_{v ∈ S} wt(v) / d_S`.
    pub value: f64,
    /// Witnessed triangles (with multiplicity over the probes).
    pub triangles_found: u64,
}

/// One trial: draw an occurrence `v` from the sampler proportionally to
/// degree, a uniform incident edge `(v, u)`, then probe `u`'s neighbors
/// per `draw_plan`. A probe that closes a triangle contributes its weight
/// (at the plan's scale) when `v` is light; labels are only resolved for
/// triangles actually found.
pub fn run_trial<R: Rng + ?Sized>(
    chan: &mut QueryChannel<'_>,
    sampler: &DegreeProportionalSampler,
    labeler: &mut HeavyLabeler,
    rng: &mut R,
) -> Result<TrialOutcome, GraphError> {
    let zero = TrialOutcome {
        value: 0.0,
        triangles_found: 0,
    };
    let (v, d_v) = match sampler.draw(rng) {
        Some(pick) => pick,
        None => return Ok(zero),
    };
    let (_, u) = chan.uniform_incident_edge(v, d_v, rng)?;
    let d_u = chan.degree(u)?;
    let (reps, scale, keep_p) = draw_plan(d_u, labeler.context().sqrt_m_hat());
    if keep_p < 1.0 && !rng.gen_bool(keep_p) {
        return Ok(zero);
    }
    let mut sum = 0.0;
    let mut found = 0u64;
    for _ in 0..reps {
        let i = rng.gen_range(0..d_u);
        let w = chan.neighbor(u, i)?;
        if w == v || !chan.pair(w, v)? {
            continue;
        }
        found += 1;
        if labeler.classify(chan, v)? != Label::Light {
            continue;
        }
        let mut light = 1usize;
        light += (labeler.classify(chan, u)? == Label::Light) as usize;
        light += (labeler.classify(chan, w)? == Label::Light) as usize;
        sum += scale * TriangleWeight::from_light_count(light).as_f64();
    }
    Ok(TrialOutcome {
        value: sum / reps as f64,
        triangles_found: found,
    })
}

/// Outcome of one estimator run.
#[derive(Debug, Clone, Copy)]
pub struct EstimateOutcome {
    /// `X = n · d_S · Σ Y / (s1 · s2)`; estimates `Σ_v wt(v) = t` minus
    /// the all-heavy triangles.
    pub estimate: f64,
    pub s1: usize,
    pub s2: usize,
    /// Total degree of the vertex sample.
    pub d_s: u64,
    /// The trial count was clamped at its cap; the caller should fall
    /// back to the exact path.
    pub cap_hit: bool,
    /// Every sampled vertex was isolated.
    pub empty_sample: bool,
    pub triangles_found: u64,
    /// Queries this run spent on the shared channel.
    pub ledger: QueryLedger,
}

/// One estimator run on a shared channel and labeler, so degree memos and
/// labels persist across runs under the same guesses.
pub fn estimate_run(
    chan: &mut QueryChannel<'_>,
    labeler: &mut HeavyLabeler,
    run_seed: u64,
) -> Result<EstimateOutcome, GraphError> {
    let ctx = *labeler.context();
    let n = chan.n();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let before = *chan.ledger();
    let mut rng = rng_from(run_seed);
    let s1 = ctx.s1(n);
    let (s2, cap_hit) = ctx.s2(n);
    let sampler = DegreeProportionalSampler::sample_uniform(chan, s1, &mut rng)?;
    let d_s = sampler.total_degree();
    let mut estimate = 0.0;
    let mut found = 0u64;
    if d_s > 0 {
        let mut sum = 0.0;
        for _ in 0..s2 {
            let trial = run_trial(chan, &sampler, labeler, &mut rng)?;
            sum += trial.value;
            found += trial.triangles_found;
        }
        estimate = n as f64 * d_s as f64 * sum / (s1 as f64 * s2 as f64);
    }
    let after = chan.ledger();
    Ok(EstimateOutcome {
        estimate,
        s1,
        s2,
        d_s,
        cap_hit,
        empty_sample: d_s == 0,
        triangles_found: found,
        ledger: QueryLedger {
            degree_queries: after.degree_queries - before.degree_queries,
            neighbor_queries: after.neighbor_queries - before.neighbor_queries,
            pair_queries: after.pair_queries - before.pair_queries,
        },
    })
}

/// A single run with its own channel and a fresh labeler seeded from
/// `master_seed`.
pub fn estimate_once(
    graph: &QueryGraph,
    ctx: GuessContext,
    master_seed: u64,
) -> Result<EstimateOutcome, GraphError> {
    let mut chan = QueryChannel::new(graph).memoize_degrees();
    let mut labeler = HeavyLabeler::new(ctx, master_seed, graph.n());
    estimate_run(&mut chan, &mut labeler, mix_all(master_seed, &[TRI_STREAM, 0, 0]))
}

/// Minimum over `min_runs` independent runs.
#[derive(Debug, Clone, Copy)]
pub struct RobustOutcome {
    pub estimate: f64,
    pub runs: usize,
    pub cap_hit: bool,
    pub triangles_found: u64,
    pub ledger: QueryLedger,
}

pub fn robust_estimate(
    graph: &QueryGraph,
    ctx: GuessContext,
    master_seed: u64,
) -> Result<RobustOutcome, GraphError> {
    let mut chan = QueryChannel::new(graph).memoize_degrees();
    let mut labeler = HeavyLabeler::new(ctx, master_seed, graph.n());
    let runs = ctx.min_runs(graph.n());
    let mut best = f64::INFINITY;
    let mut cap_hit = false;
    let mut found = 0u64;
    for run in 0..runs as u64 {
        let out = estimate_run(
            &mut chan,
            &mut labeler,
            mix_all(master_seed, &[TRI_STREAM, 0, run]),
        )?;
        best = best.min(out.estimate);
        cap_hit |= out.cap_hit;
        found += out.triangles_found;
    }
    Ok(RobustOutcome {
        estimate: best,
        runs,
        cap_hit,
        triangles_found: found,
        ledger: *chan.ledger(),
    })
}

/// Output of the full triangle-count estimator.
#[derive(Debug, Clone)]
pub struct TriangleReport {
    /// Final triangle-count estimate (the exact count on the fallback
    /// path).
    pub estimate: f64,
    /// Set when the answer came from an exact count after a full scan.
    pub exact: Option<u64>,
    /// Edge-count guess from the average-degree phase.
    pub m_hat: u64,
    /// Average-degree estimate from that phase.
    pub avg_degree: f64,
    pub eps: f64,
    /// The rescaled ε handed to the inner estimator.
    pub internal_eps: f64,
    pub profile: Profile,
    pub master_seed: u64,
    /// `(t̂ guess, min-of-runs estimate)` per geometric-search step.
    pub guess_trace: Vec<(u64, f64)>,
    pub fallback_used: bool,
    /// A trial cap was hit before falling back.
    pub cap_hit: bool,
    /// Heavy labels materialized at the accepted guess.
    pub heavy_count: usize,
    /// Runs per guess.
    pub runs: usize,
    /// Total spend, average-degree phase included.
    pub ledger: QueryLedger,
    /// The average-degree phase's share of the spend.
    pub avg_ledger: QueryLedger,
}

fn finish_exact(
    graph: &QueryGraph,
    chan: &mut QueryChannel<'_>,
    mut report: TriangleReport,
) -> TriangleReport {
    chan.force_full_scan();
    let t = oracle::exact_triangles(graph).t();
    report.estimate = t as f64;
    report.exact = Some(t);
    report.fallback_used = true;
    report.ledger += *chan.ledger();
    report
}

/// The full pipeline: estimate the average degree to fix m̂, rescale ε for
/// the inner estimator, then geometrically search t̂ = n³, n³/2, …
/// accepting once the min-of-runs estimate reaches the guess. Bottoming
/// out, hitting a trial cap, or crossing the query budget all route to a
/// full scan and the exact count.
pub fn count_triangles(
    graph: &QueryGraph,
    eps: f64,
    profile: Profile,
    master_seed: u64,
    options: &SearchOptions,
) -> Result<TriangleReport, GraphError> {
    assert!(eps > 0.0 && eps < 1.0, "eps must be in (0, 1)");
    let n = graph.n();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let avg = avgdeg::estimate_avg_degree(
        graph,
        eps,
        profile,
        mix_all(master_seed, &[AVG_PHASE]),
        options,
    )?;
    let internal_eps = profile.internal_eps(eps);
    let mut report = TriangleReport {
        estimate: 0.0,
        exact: None,
        m_hat: avg.m_hat,
        avg_degree: avg.estimate,
        eps,
        internal_eps,
        profile,
        master_seed,
        guess_trace: Vec::new(),
        fallback_used: false,
        cap_hit: false,
        heavy_count: 0,
        runs: 0,
        ledger: avg.ledger,
        avg_ledger: avg.ledger,
    };
    if avg.m_hat == 0 {
        // Edge-free: the degree scan already confirmed the exact answer.
        report.exact = Some(0);
        report.fallback_used = true;
        return Ok(report);
    }
    let m_hat = avg.m_hat;
    let budget = options.budget_factor.map(|factor| {
        let total = math::ceil(factor * m_hat as f64) as u64;
        total.saturating_sub(report.avg_ledger.total()).max(1)
    });
    let mut chan = match budget {
        Some(b) => QueryChannel::with_budget(graph, b),
        None => QueryChannel::new(graph),
    }
    .memoize_degrees();
    let mut t_hat = (n as u64).saturating_pow(3);
    let mut guess_idx = 0u64;
    loop {
        let ctx = GuessContext::new(m_hat, t_hat, internal_eps, profile);
        let mut labeler = HeavyLabeler::new(ctx, master_seed, n);
        let runs = ctx.min_runs(n);
        report.runs = runs;
        let mut best = f64::INFINITY;
        let mut cap = false;
        for run in 0..runs as u64 {
            let out = estimate_run(
                &mut chan,
                &mut labeler,
                mix_all(master_seed, &[TRI_STREAM, guess_idx, run]),
            )?;
            cap |= out.cap_hit;
            best = best.min(out.estimate);
            if chan.fallback_used() {
                break;
            }
        }
        if chan.fallback_used() || cap {
            report.cap_hit = cap;
            return Ok(finish_exact(graph, &mut chan, report));
        }
        report.guess_trace.push((t_hat, best));
        let reached = best >= t_hat as f64;
        let accept = if options.accept_when_estimate_reaches_guess {
            reached
        } else {
            !reached
        };
        if accept {
            report.estimate = best;
            report.heavy_count = labeler.heavy_count();
            report.ledger += *chan.ledger();
            return Ok(report);
        }
        t_hat /= 2;
        guess_idx += 1;
        if t_hat == 0 {
            return Ok(finish_exact(graph, &mut chan, report));
        }
    }
}
