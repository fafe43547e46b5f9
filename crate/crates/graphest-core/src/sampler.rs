//! Degree-proportional sampling over a vertex multiset, via prefix sums
//! and binary search. Building costs one degree query per member; draws
//! cost no graph queries at all.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::GraphError;
use crate::graph::QueryChannel;

#[derive(Debug, Clone)]
pub struct DegreeProportionalSampler {
    members: Vec<usize>,
    degrees: Vec<usize>,
    prefix: Vec<u64>,
    d_s: u64,
}

impl DegreeProportionalSampler {
    /// Wraps an explicit multiset. Queries each member's degree once.
    pub fn from_members(
        chan: &mut QueryChannel<'_>,
        members: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let mut degrees = Vec::with_capacity(members.len());
        let mut prefix = Vec::with_capacity(members.len());
        let mut d_s = 0u64;
        for &v in &members {
            let d = chan.degree(v)?;
            degrees.push(d);
            d_s += d as u64;
            prefix.push(d_s);
        }
        Ok(DegreeProportionalSampler {
            members,
            degrees,
            prefix,
            d_s,
        })
    }

    /// Draws `size` vertices uniformly with replacement and builds the
    /// sampler over them.
    pub fn sample_uniform<R: Rng + ?Sized>(
        chan: &mut QueryChannel<'_>,
        size: usize,
        rng: &mut R,
    ) -> Result<Self, GraphError> {
        let mut members = Vec::with_capacity(size);
        for _ in 0..size {
            members.push(chan.uniform_vertex(rng)?);
        }
        Self::from_members(chan, members)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Σ_{v ∈ S} d_v` over the multiset.
    #[inline]
    pub fn total_degree(&self) -> u64 {
        self.d_s
    }

    #[inline]
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// One occurrence, with probability proportional to its degree.
    /// `None` when every member is isolated. Returns `(vertex, degree)`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<(usize, usize)> {
        if self.d_s == 0 {
            return None;
        }
        let x = rng.gen_range(0..self.d_s);
        let idx = self.prefix.partition_point(|&cum| cum <= x);
        Some((self.members[idx], self.degrees[idx]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::rng::rng_from;
    use alloc::vec;

    #[test]
    fn occurrences_drawn_proportional_to_degree() {
        // path 0-1-2-3 plus edge 1-3: d_1 = 3, d_2 = 2.
        let g = crate::graph::QueryGraph::from_edges(None, [(0, 1), (1, 2), (2, 3), (1, 3)]);
        let mut chan = QueryChannel::new(&g);
        // multiset {1, 1, 2}: each copy of 1 drawn w.p. 3/8, vertex 2 w.p. 2/8.
        let s = DegreeProportionalSampler::from_members(&mut chan, vec![1, 1, 2]).unwrap();
        assert_eq!(chan.ledger().degree_queries, 3);
        assert_eq!(s.total_degree(), 8);
        let mut rng = rng_from(2);
        let draws = 80_000;
        let mut hit_two = 0u32;
        for _ in 0..draws {
            let (v, d) = s.draw(&mut rng).unwrap();
            assert_eq!(d, g.degree_of(v));
            if v == 2 {
                hit_two += 1;
            }
        }
        let p = 0.25;
        let sigma = (p * (1.0 - p) * draws as f64).sqrt();
        assert!((hit_two as f64 - p * draws as f64).abs() < 3.0 * sigma);
    }

    #[test]
    fn equal_degrees_draw_uniformly() {
        let g = gen::cycle(6);
        let mut chan = QueryChannel::new(&g);
        let members: Vec<usize> = (0..6).collect();
        let s = DegreeProportionalSampler::from_members(&mut chan, members).unwrap();
        let mut rng = rng_from(17);
        let draws = 120_000usize;
        let mut counts = [0u32; 6];
        for _ in 0..draws {
            counts[s.draw(&mut rng).unwrap().0] += 1;
        }
        // chi-square with 5 dof; 3-sigma-ish critical value.
        let expect = draws as f64 / 6.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expect).powi(2) / expect)
            .sum();
        assert!(chi2 < 20.5, "chi2 = {chi2}");
    }

    #[test]
    fn all_isolated_members_flag_empty_draw() {
        let g = crate::graph::QueryGraph::from_edges(Some(4), [(0, 1)]);
        let mut chan = QueryChannel::new(&g);
        let s = DegreeProportionalSampler::from_members(&mut chan, vec![2, 3]).unwrap();
        assert_eq!(s.total_degree(), 0);
        let mut rng = rng_from(0);
        assert!(s.draw(&mut rng).is_none());
    }
}
