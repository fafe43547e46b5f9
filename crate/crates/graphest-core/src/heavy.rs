//! The heavy/light vertex classifier: a degree shortcut, then a
//! median-of-repeats test on sampled triangle mass, with per-vertex
//! pre-committed randomness so the labeling behaves deterministically.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::GraphError;
use crate::graph::QueryChannel;
use crate::params::GuessContext;
use crate::rng::{mix, mix_all, rng_from};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Heavy,
    Light,
}

/// One sample of the triangle count of edge `e`: draw `⌈d_u/√m̂⌉` uniform
/// neighbors of the smaller-degree endpoint `u` and average `d_u` over the
/// draws that close a triangle with `e`. Conditioned on `e`, the mean is
/// `t_e`.
pub fn edge_triangle_sample<R: Rng + ?Sized>(
    chan: &mut QueryChannel<'_>,
    e: (usize, usize),
    ctx: &GuessContext,
    rng: &mut R,
) -> Result<f64, GraphError> {
    let (a, b) = e;
    let d_a = chan.degree(a)?;
    let d_b = chan.degree(b)?;
    // Smaller-degree endpoint; ties break to the smaller id.
    let (u, other, d_u) = if d_a < d_b || (d_a == d_b && a < b) {
        (a, b, d_a)
    } else {
        (b, a, d_b)
    };
    let reps = libm::ceil(d_u as f64 / ctx.sqrt_m_hat()).max(1.0) as usize;
    let mut sum = 0u64;
    for _ in 0..reps {
        let i = rng.gen_range(0..d_u);
        let w = chan.neighbor(u, i)?;
        if w != other && chan.pair(w, other)? {
            sum += d_u as u64;
        }
    }
    Ok(sum as f64 / reps as f64)
}

/// One trial of the median test: average `edge_triangle_sample` over
/// uniform incident edges of `v` and scale by `d_v`. Estimates `t_v`.
/// A degree-zero vertex has `t_v = 0` exactly, so no sampling happens.
pub fn heavy_trial<R: Rng + ?Sized>(
    chan: &mut QueryChannel<'_>,
    v: usize,
    ctx: &GuessContext,
    rng: &mut R,
) -> Result<f64, GraphError> {
    let d_v = chan.degree(v)?;
    if d_v == 0 {
        return Ok(0.0);
    }
    let s = ctx.inner_samples();
    let mut sum = 0.0;
    for _ in 0..s {
        let e = chan.uniform_incident_edge(v, d_v, rng)?;
        sum += edge_triangle_sample(chan, e, ctx, rng)?;
    }
    Ok(d_v as f64 * sum / s as f64)
}

/// Memoized heavy/light labeling. Each vertex gets its own RNG stream
/// derived from `(master_seed, guesses, vertex id)`, so labels are
/// independent of the order in which vertices are classified.
#[derive(Debug, Clone)]
pub struct HeavyLabeler {
    ctx: GuessContext,
    master_seed: u64,
    cache: Vec<Option<Label>>,
}

impl HeavyLabeler {
    pub fn new(ctx: GuessContext, master_seed: u64, n: usize) -> Self {
        HeavyLabeler {
            ctx,
            master_seed,
            cache: vec![None; n],
        }
    }

    /// A labeler with every label fixed up front. Classification never
    /// samples, so trials against it have closed-form expectations.
    pub fn with_labels(ctx: GuessContext, labels: Vec<Label>) -> Self {
        HeavyLabeler {
            ctx,
            master_seed: 0,
            cache: labels.into_iter().map(Some).collect(),
        }
    }

    #[inline]
    pub fn context(&self) -> &GuessContext {
        &self.ctx
    }

    /// The label if this vertex was already classified.
    #[inline]
    pub fn cached(&self, v: usize) -> Option<Label> {
        self.cache[v]
    }

    pub fn heavy_count(&self) -> usize {
        self.cache
            .iter()
            .filter(|l| matches!(l, Some(Label::Heavy)))
            .count()
    }

    /// Classifies `v`, caching the result. A cache hit costs zero queries.
    pub fn classify(
        &mut self,
        chan: &mut QueryChannel<'_>,
        v: usize,
    ) -> Result<Label, GraphError> {
        if let Some(label) = self.cache[v] {
            return Ok(label);
        }
        let label = self.classify_uncached(chan, v)?;
        self.cache[v] = Some(label);
        Ok(label)
    }

    fn classify_uncached(
        &self,
        chan: &mut QueryChannel<'_>,
        v: usize,
    ) -> Result<Label, GraphError> {
        let d_v = chan.degree(v)?;
        if d_v as f64 > self.ctx.degree_threshold() {
            return Ok(Label::Heavy);
        }
        let mut rng = rng_from(mix(
            mix_all(self.master_seed, &[self.ctx.seed_label()]),
            v as u64,
        ));
        let repeats = self.ctx.median_repeats(chan.n());
        let mut trials = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            trials.push(heavy_trial(chan, v, &self.ctx, &mut rng)?);
        }
        trials.sort_unstable_by(f64::total_cmp);
        let median = trials[trials.len() / 2];
        if median > self.ctx.median_threshold() {
            Ok(Label::Heavy)
        } else {
            Ok(Label::Light)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::QueryChannel;
    use crate::oracle::exact_triangles;
    use crate::params::Profile;

    fn ctx(m_hat: u64, t_hat: u64, eps: f64) -> GuessContext {
        GuessContext::new(m_hat, t_hat, eps, Profile::Practical)
    }

    #[test]
    fn edge_sample_k3_mean_is_t_e() {
        let g = gen::complete(3);
        let mut chan = QueryChannel::new(&g);
        let mut rng = rng_from(3);
        let c = ctx(3, 1, 0.5);
        let draws = 100_000;
        let mean: f64 = (0..draws)
            .map(|_| edge_triangle_sample(&mut chan, (0, 1), &c, &mut rng).unwrap())
            .sum::<f64>()
            / draws as f64;
        // Y averages 2 draws of {0, 2} each hitting w.p. 1/2.
        assert!((mean - 1.0).abs() < 3.0 * (0.5f64 / draws as f64).sqrt());
    }

    #[test]
    fn edge_sample_triangle_free_is_zero() {
        let g = gen::path(4);
        let mut chan = QueryChannel::new(&g);
        let mut rng = rng_from(5);
        let c = ctx(3, 1, 0.5);
        for _ in 0..1000 {
            assert_eq!(
                edge_triangle_sample(&mut chan, (1, 2), &c, &mut rng).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn edge_sample_k4_mean_matches_oracle() {
        let g = gen::complete(4);
        let oracle = exact_triangles(&g);
        let mut chan = QueryChannel::new(&g);
        let mut rng = rng_from(9);
        let c = ctx(6, 4, 0.5);
        let draws = 100_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..draws {
            let y = edge_triangle_sample(&mut chan, (0, 1), &c, &mut rng).unwrap();
            sum += y;
            sumsq += y * y;
        }
        let mean = sum / draws as f64;
        let var = sumsq / draws as f64 - mean * mean;
        let se = (var / draws as f64).sqrt();
        assert!((mean - oracle.t_edge(0, 1) as f64).abs() < 4.0 * se.max(1e-6));
    }

    #[test]
    fn heavy_trial_isolated_vertex_is_zero() {
        let g = crate::graph::QueryGraph::from_edges(Some(3), [(0, 1)]);
        let mut chan = QueryChannel::new(&g);
        let mut rng = rng_from(1);
        assert_eq!(heavy_trial(&mut chan, 2, &ctx(1, 1, 0.5), &mut rng).unwrap(), 0.0);
    }

    #[test]
    fn heavy_trial_concentrates_near_t_v() {
        // K3 vertex with exact guesses: t_v = 2, quartile bound from the
        // one-iteration deviation lemma.
        let g = gen::complete(3);
        let mut chan = QueryChannel::new(&g);
        let mut rng = rng_from(21);
        let c = ctx(3, 1, 0.5);
        let trials = 10_000;
        let bound = 0.5 * 2.0f64.max(0.5 * 2.0 / 3.0);
        let bad = (0..trials)
            .filter(|_| {
                let x = heavy_trial(&mut chan, 0, &c, &mut rng).unwrap();
                (x - 2.0).abs() > bound
            })
            .count();
        assert!(
            (bad as f64) < trials as f64 / 4.0,
            "deviation rate {bad}/{trials}"
        );
    }

    #[test]
    fn degree_shortcut_skips_sampling() {
        let g = gen::star(150);
        let c = ctx(100, 8, 0.999);
        assert!(c.degree_threshold() < 150.0);
        let mut labeler = HeavyLabeler::new(c, 0, g.n());
        let mut chan = QueryChannel::new(&g);
        assert_eq!(labeler.classify(&mut chan, 0).unwrap(), Label::Heavy);
        assert_eq!(chan.ledger().degree_queries, 1);
        assert_eq!(chan.ledger().total(), 1);
    }

    #[test]
    fn triangle_free_vertex_is_light() {
        let g = gen::path(5);
        for seed in 0..50 {
            let mut labeler = HeavyLabeler::new(ctx(4, 1, 0.5), seed, g.n());
            let mut chan = QueryChannel::new(&g);
            assert_eq!(labeler.classify(&mut chan, 2).unwrap(), Label::Light);
        }
    }

    #[test]
    fn k4_vertex_is_heavy_under_low_triangle_guess() {
        // t_v = 6 far above the median threshold ~1.
        let g = gen::complete(4);
        let heavy = (0..200)
            .filter(|&seed| {
                let mut labeler = HeavyLabeler::new(ctx(6, 1, 0.9), seed, g.n());
                let mut chan = QueryChannel::new(&g);
                labeler.classify(&mut chan, 0).unwrap() == Label::Heavy
            })
            .count();
        assert!(heavy >= 190, "heavy in {heavy}/200 labelers");
    }

    #[test]
    fn classify_is_cached_and_query_free_on_repeat() {
        let g = gen::complete(4);
        let mut labeler = HeavyLabeler::new(ctx(6, 4, 0.5), 7, g.n());
        let mut chan = QueryChannel::new(&g);
        let first = labeler.classify(&mut chan, 1).unwrap();
        let spent = chan.ledger().total();
        let second = labeler.classify(&mut chan, 1).unwrap();
        assert_eq!(first, second);
        assert_eq!(chan.ledger().total(), spent);
    }

    #[test]
    fn labels_do_not_depend_on_call_order() {
        let g = gen::er(30, 0.3, 4);
        let c = ctx(g.m() as u64, 8, 0.5);
        let mut forward = HeavyLabeler::new(c, 99, g.n());
        let mut backward = HeavyLabeler::new(c, 99, g.n());
        let mut chan_a = QueryChannel::new(&g);
        let mut chan_b = QueryChannel::new(&g);
        let fwd: Vec<Label> = (0..g.n())
            .map(|v| forward.classify(&mut chan_a, v).unwrap())
            .collect();
        let mut bwd: Vec<(usize, Label)> = (0..g.n())
            .rev()
            .map(|v| (v, backward.classify(&mut chan_b, v).unwrap()))
            .collect();
        bwd.sort_by_key(|&(v, _)| v);
        for (v, label) in bwd {
            assert_eq!(label, fwd[v]);
        }
        assert_eq!(chan_a.ledger(), chan_b.ledger());
    }
}
