//! Exact triangle statistics and exact average degree: the ground truth
//! every estimator is tested against, and the answer path after a full
//! scan.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::GraphError;
use crate::graph::QueryGraph;
use crate::heavy::Label;
use crate::triangle::TriangleWeight;

/// Largest n the O(n^3) brute-force counter will accept.
pub const BRUTE_FORCE_LIMIT: usize = 2000;

/// An exact rational with denominator 12 (the lcm of the triangle weight
/// denominators 2, 4, 6), so weight identities can be tested exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Twelfths(pub u64);

impl Twelfths {
    #[inline]
    pub fn as_f64(&self) -> f64 {
        self.0 as f64 / 12.0
    }

    /// The integer value, when the sum is a whole number.
    pub fn to_integer(&self) -> Option<u64> {
        (self.0 % 12 == 0).then(|| self.0 / 12)
    }
}

/// Exact triangle counts: total `t`, per-edge `t_e`, and per-vertex
/// `t_v = Σ_{e ∈ δ(v)} t_e` (twice the triangles containing `v`).
#[derive(Debug, Clone)]
pub struct TriangleOracle {
    t: u64,
    per_edge: HashMap<(usize, usize), u64>,
    per_vertex: Vec<u64>,
}

impl TriangleOracle {
    #[inline]
    pub fn t(&self) -> u64 {
        self.t
    }

    /// `t_e` for the edge `(u, v)`; 0 for non-edges.
    pub fn t_edge(&self, u: usize, v: usize) -> u64 {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.per_edge.get(&key).copied().unwrap_or(0)
    }

    /// `t_v`, twice the number of triangles containing `v`.
    #[inline]
    pub fn t_vertex(&self, v: usize) -> u64 {
        self.per_vertex[v]
    }

    pub fn per_edge(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.per_edge.iter().map(|(&e, &c)| (e, c))
    }
}

/// Edge-iterator exact counter: for each edge, intersect the neighbor list
/// of the smaller-degree endpoint with the other endpoint's adjacency.
pub fn exact_triangles(graph: &QueryGraph) -> TriangleOracle {
    let mut per_edge = HashMap::new();
    let mut per_vertex = vec![0u64; graph.n()];
    let mut total3 = 0u64;
    for (u, v) in graph.edges() {
        let (scan, other) = if graph.degree_of(u) <= graph.degree_of(v) {
            (u, v)
        } else {
            (v, u)
        };
        let te = graph
            .neighbors(scan)
            .iter()
            .filter(|&&w| w != other && graph.has_edge(w, other))
            .count() as u64;
        per_edge.insert((u, v), te);
        per_vertex[u] += te;
        per_vertex[v] += te;
        total3 += te;
    }
    debug_assert_eq!(total3 % 3, 0);
    TriangleOracle {
        t: total3 / 3,
        per_edge,
        per_vertex,
    }
}

/// The actual triangles through edge `(u, v)`, as the list of third
/// vertices. Materialized on demand only.
pub fn triangles_of_edge(graph: &QueryGraph, u: usize, v: usize) -> Vec<usize> {
    let (scan, other) = if graph.degree_of(u) <= graph.degree_of(v) {
        (u, v)
    } else {
        (v, u)
    };
    graph
        .neighbors(scan)
        .iter()
        .copied()
        .filter(|&w| w != other && graph.has_edge(w, other))
        .collect()
}

/// Independent O(n^3) counter over all vertex triples, used only to
/// cross-check `exact_triangles`.
pub fn brute_force_triangles(graph: &QueryGraph) -> Result<u64, GraphError> {
    let n = graph.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(GraphError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut t = 0u64;
    for u in 0..n {
        for v in (u + 1)..n {
            if !graph.has_edge(u, v) {
                continue;
            }
            for w in (v + 1)..n {
                if graph.has_edge(u, w) && graph.has_edge(v, w) {
                    t += 1;
                }
            }
        }
    }
    Ok(t)
}

/// `wt(v) = Σ_{e ∈ δ(v)} Σ_{Δ ∈ T_e} wt(Δ)` for a light `v`, and 0 for a
/// heavy one. Exact, in twelfths.
pub fn exact_vertex_weight(graph: &QueryGraph, labels: &[Label], v: usize) -> Twelfths {
    if labels[v] != Label::Light {
        return Twelfths(0);
    }
    let mut sum = 0u64;
    for &w in graph.neighbors(v) {
        for x in triangles_of_edge(graph, v, w) {
            let light = [v, w, x]
                .iter()
                .filter(|&&y| labels[y] == Label::Light)
                .count();
            sum += TriangleWeight::from_light_count(light).twelfths() as u64;
        }
    }
    Twelfths(sum)
}

/// The triple sum `Σ_{v light} Σ_{e ∈ δ(v)} Σ_{Δ ∈ T_e} wt(Δ)`, computed
/// literally and exactly. For any labeling this equals `t` minus the
/// number of triangles whose three vertices are all heavy.
pub fn weighted_light_sum(graph: &QueryGraph, labels: &[Label]) -> Twelfths {
    assert_eq!(labels.len(), graph.n());
    let mut sum = 0u64;
    for v in 0..graph.n() {
        sum += exact_vertex_weight(graph, labels, v).0;
    }
    Twelfths(sum)
}

/// Number of triangles with all three vertices heavy (weight zero).
pub fn all_heavy_triangles(graph: &QueryGraph, labels: &[Label]) -> u64 {
    let mut count = 0u64;
    for (u, v) in graph.edges() {
        if labels[u] != Label::Heavy || labels[v] != Label::Heavy {
            continue;
        }
        count += triangles_of_edge(graph, u, v)
            .into_iter()
            .filter(|&w| w > v && labels[w] == Label::Heavy)
            .count() as u64;
    }
    count
}

/// `Σ_e min(d_u, d_v)`, the edge-iterator work bound.
pub fn min_endpoint_sum(graph: &QueryGraph) -> u64 {
    graph
        .edges()
        .map(|(u, v)| graph.degree_of(u).min(graph.degree_of(v)) as u64)
        .sum()
}

/// Exact average degree 2m/n.
pub fn exact_avg_degree(graph: &QueryGraph) -> Result<f64, GraphError> {
    if graph.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    Ok(2.0 * graph.m() as f64 / graph.n() as f64)
}
