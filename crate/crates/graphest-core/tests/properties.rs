//! Property-based invariants over random graphs.

use proptest::collection::vec;
use proptest::prelude::*;

use graphest_core::avgdeg;
use graphest_core::gen;
use graphest_core::heavy::Label;
use graphest_core::oracle::{
    all_heavy_triangles, exact_triangles, weighted_light_sum,
};
use graphest_core::{Profile, QueryChannel, QueryGraph, SearchOptions};

fn arb_graph() -> impl Strategy<Value = QueryGraph> {
    (2usize..40, vec((0usize..40, 0usize..40), 0..120)).prop_map(|(n, edges)| {
        let clipped = edges.into_iter().map(|(u, v)| (u % n, v % n));
        QueryGraph::from_edges(Some(n), clipped)
    })
}

proptest! {
    #[test]
    fn degree_sum_is_twice_m(g in arb_graph()) {
        let sum: usize = (0..g.n()).map(|v| g.degree_of(v)).sum();
        prop_assert_eq!(sum, 2 * g.m());
    }

    #[test]
    fn adjacency_is_sorted_simple_and_symmetric(g in arb_graph()) {
        for v in 0..g.n() {
            let nbrs = g.neighbors(v);
            prop_assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nbrs.contains(&v));
            for &u in nbrs {
                prop_assert!(g.neighbors(u).contains(&v));
                prop_assert!(g.has_edge(u, v) && g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn pair_queries_match_adjacency(g in arb_graph()) {
        let mut chan = QueryChannel::new(&g);
        for u in 0..g.n() {
            for v in 0..g.n() {
                let direct = g.neighbors(u).binary_search(&v).is_ok();
                prop_assert_eq!(chan.pair(u, v).unwrap(), direct);
            }
        }
    }

    #[test]
    fn triangle_sums_are_consistent(g in arb_graph()) {
        let o = exact_triangles(&g);
        let edge_sum: u64 = o.per_edge().map(|(_, te)| te).sum();
        let vertex_sum: u64 = (0..g.n()).map(|v| o.t_vertex(v)).sum();
        prop_assert_eq!(edge_sum, 3 * o.t());
        prop_assert_eq!(vertex_sum, 6 * o.t());
    }

    #[test]
    fn weight_identity_holds_for_any_labeling(
        g in arb_graph(),
        bits in vec(any::<bool>(), 40),
    ) {
        let labels: Vec<Label> = (0..g.n())
            .map(|v| if bits[v] { Label::Heavy } else { Label::Light })
            .collect();
        let t = exact_triangles(&g).t();
        let lost = all_heavy_triangles(&g, &labels);
        prop_assert_eq!(weighted_light_sum(&g, &labels).to_integer(), Some(t - lost));
    }

    #[test]
    fn comparator_is_a_total_order(g in arb_graph()) {
        let mut chan = QueryChannel::new(&g).memoize_degrees();
        for u in 0..g.n() {
            prop_assert!(!avgdeg::precedes(&mut chan, u, u).unwrap());
            for v in (u + 1)..g.n() {
                let a = avgdeg::precedes(&mut chan, u, v).unwrap();
                let b = avgdeg::precedes(&mut chan, v, u).unwrap();
                prop_assert!(a != b);
            }
        }
    }

    #[test]
    fn d_plus_decomposition_sums_to_m(g in arb_graph()) {
        let sum: usize = (0..g.n()).map(|v| avgdeg::exact_d_plus(&g, v)).sum();
        prop_assert_eq!(sum, g.m());
    }

    #[test]
    fn avg_degree_search_is_seed_deterministic(seed in 0u64..50) {
        let g = gen::er(60, 0.2, 9);
        let opts = SearchOptions::default();
        let a = avgdeg::estimate_avg_degree(&g, 0.3, Profile::Practical, seed, &opts).unwrap();
        let b = avgdeg::estimate_avg_degree(&g, 0.3, Profile::Practical, seed, &opts).unwrap();
        prop_assert_eq!(a.estimate, b.estimate);
        prop_assert_eq!(a.ledger, b.ledger);
        prop_assert_eq!(a.guess_trace, b.guess_trace);
    }
}
