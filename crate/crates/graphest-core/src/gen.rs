//! Seeded graph builders for fixtures and tests.

use alloc::vec::Vec;

use rand::Rng;

use crate::graph::QueryGraph;
use crate::rng::rng_from;

/// Erdős–Rényi G(n, p), each unordered pair included independently.
pub fn er(n: usize, p: f64, seed: u64) -> QueryGraph {
    let mut rng = rng_from(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    QueryGraph::from_edges(Some(n), edges)
}

/// Complete graph K_n.
pub fn complete(n: usize) -> QueryGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    QueryGraph::from_edges(Some(n), edges)
}

/// Star K_{1,leaves} with vertex 0 as the center.
pub fn star(leaves: usize) -> QueryGraph {
    QueryGraph::from_edges(Some(leaves + 1), (1..=leaves).map(|v| (0, v)))
}

/// Path on n vertices.
pub fn path(n: usize) -> QueryGraph {
    QueryGraph::from_edges(Some(n), (0..n.saturating_sub(1)).map(|v| (v, v + 1)))
}

/// Cycle on n vertices (n >= 3).
pub fn cycle(n: usize) -> QueryGraph {
    assert!(n >= 3);
    QueryGraph::from_edges(Some(n), (0..n).map(|v| (v, (v + 1) % n)))
}

/// Triangle 0-1-2 with a pendant vertex 3 attached to 0.
pub fn paw() -> QueryGraph {
    QueryGraph::from_edges(Some(4), [(0, 1), (1, 2), (0, 2), (0, 3)])
}

/// K_k on vertices 0..k embedded in G(n, p) noise.
pub fn clique_plus_er(n: usize, k: usize, p: f64, seed: u64) -> QueryGraph {
    assert!(k <= n);
    let mut rng = rng_from(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if v < k || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    QueryGraph::from_edges(Some(n), edges)
}
