//! The undirected simple graph behind the query model, the three query
//! types, and per-run query accounting.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::AddAssign;

use hashbrown::HashSet;
use rand::Rng;

use crate::error::{GraphError, ParseError};

#[inline]
fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An immutable simple graph on vertices `0..n`, with sorted adjacency so
/// the i-th neighbor query is deterministic.
#[derive(Debug, Clone)]
pub struct QueryGraph {
    adj: Vec<Vec<usize>>,
    pairs: HashSet<(usize, usize)>,
    m: usize,
}

/// Basic size facts about a loaded graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
}

impl QueryGraph {
    /// Builds a graph from raw edges. Self-loops are dropped, duplicates
    /// deduplicated. `n` is `max id + 1` unless `n_hint` is larger.
    pub fn from_edges<I>(n_hint: Option<usize>, edges: I) -> QueryGraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs: HashSet<(usize, usize)> = HashSet::new();
        let mut max_id: Option<usize> = None;
        for (u, v) in edges {
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            if u != v {
                pairs.insert(canonical(u, v));
            }
        }
        let n = match (n_hint, max_id) {
            (Some(h), Some(m)) => h.max(m + 1),
            (Some(h), None) => h,
            (None, Some(m)) => m + 1,
            (None, None) => 0,
        };
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let m = pairs.len();
        QueryGraph { adj, pairs, m }
    }

    /// Parses whitespace-separated `u v` lines. `#` starts a comment; the
    /// special comment `# n=<N>` forces the vertex count.
    pub fn parse_edge_list(text: &str) -> Result<QueryGraph, ParseError> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut forced_n: Option<usize> = None;
        let mut forced_line = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(value) = rest.strip_prefix("n=") {
                    let n = value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| ParseError::BadHeader { line: line_no })?;
                    forced_n = Some(n);
                    forced_line = line_no;
                }
                continue;
            }
            let mut tokens = line.split_whitespace();
            let u = tokens
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or(ParseError::Malformed { line: line_no })?;
            let v = tokens
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or(ParseError::Malformed { line: line_no })?;
            if tokens.next().is_some() {
                return Err(ParseError::Malformed { line: line_no });
            }
            edges.push((u, v));
        }
        if edges.is_empty() && forced_n.is_none() {
            return Err(ParseError::Empty);
        }
        if let Some(n) = forced_n {
            for &(u, v) in &edges {
                let big = u.max(v);
                if big >= n {
                    return Err(ParseError::VertexAboveHeader {
                        line: forced_line,
                        vertex: big,
                        n,
                    });
                }
            }
        }
        Ok(QueryGraph::from_edges(forced_n, edges))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n: self.n(),
            m: self.m,
            max_degree: self.adj.iter().map(Vec::len).max().unwrap_or(0),
        }
    }

    /// Uncounted degree access, for oracles and loaders.
    #[inline]
    pub fn degree_of(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Uncounted adjacency access (sorted ascending), for oracles.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Uncounted pair lookup, for oracles.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&canonical(u, v))
    }

    /// Iterates every edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// Per-run counts of the three query types.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryLedger {
    pub degree_queries: u64,
    pub neighbor_queries: u64,
    pub pair_queries: u64,
}

impl QueryLedger {
    #[inline]
    pub fn total(&self) -> u64 {
        self.degree_queries + self.neighbor_queries + self.pair_queries
    }
}

impl AddAssign for QueryLedger {
    fn add_assign(&mut self, rhs: QueryLedger) {
        self.degree_queries += rhs.degree_queries;
        self.neighbor_queries += rhs.neighbor_queries;
        self.pair_queries += rhs.pair_queries;
    }
}

/// Counted query access for one estimator run. Owns a private ledger and,
/// optionally, a query budget: once total spend reaches the budget the
/// channel reads the whole graph once (charged to the ledger) and serves
/// everything after that for free.
#[derive(Debug)]
pub struct QueryChannel<'g> {
    graph: &'g QueryGraph,
    ledger: QueryLedger,
    budget: Option<u64>,
    fallback: bool,
    degree_cache: Option<HashSet<usize>>,
}

impl<'g> QueryChannel<'g> {
    pub fn new(graph: &'g QueryGraph) -> Self {
        QueryChannel {
            graph,
            ledger: QueryLedger::default(),
            budget: None,
            fallback: false,
            degree_cache: None,
        }
    }

    /// Budget in query units; crossing it triggers the full-scan fallback.
    pub fn with_budget(graph: &'g QueryGraph, budget: u64) -> Self {
        QueryChannel {
            graph,
            ledger: QueryLedger::default(),
            budget: Some(budget),
            fallback: false,
            degree_cache: None,
        }
    }

    /// Remember degree answers so a repeated degree query on the same
    /// vertex is served from memory and not charged again. Off by default;
    /// estimators turn it on.
    pub fn memoize_degrees(mut self) -> Self {
        self.degree_cache = Some(HashSet::new());
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn graph(&self) -> &'g QueryGraph {
        self.graph
    }

    #[inline]
    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    #[inline]
    pub fn fallback_used(&self) -> bool {
        self.fallback
    }

    #[inline]
    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.graph.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.graph.n(),
            })
        }
    }

    #[inline]
    fn spend(&mut self, counter: fn(&mut QueryLedger) -> &mut u64) {
        if self.fallback {
            return;
        }
        if let Some(budget) = self.budget {
            if self.ledger.total() >= budget {
                self.force_full_scan();
                return;
            }
        }
        *counter(&mut self.ledger) += 1;
    }

    /// Reads the entire graph (one degree query per vertex, one neighbor
    /// query per adjacency entry), charges that to the ledger, and stops
    /// counting afterwards.
    pub fn force_full_scan(&mut self) {
        if self.fallback {
            return;
        }
        self.ledger.degree_queries += self.graph.n() as u64;
        self.ledger.neighbor_queries += 2 * self.graph.m() as u64;
        self.fallback = true;
    }

    /// Degree query.
    pub fn degree(&mut self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        let known = match &mut self.degree_cache {
            Some(cache) => !cache.insert(v),
            None => false,
        };
        if !known {
            self.spend(|l| &mut l.degree_queries);
        }
        Ok(self.graph.degree_of(v))
    }

    /// i-th neighbor query, 0-based over the sorted adjacency.
    pub fn neighbor(&mut self, v: usize, i: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        let d = self.graph.degree_of(v);
        if i >= d {
            return Err(GraphError::NeighborIndexOutOfRange {
                vertex: v,
                index: i,
                degree: d,
            });
        }
        self.spend(|l| &mut l.neighbor_queries);
        Ok(self.graph.neighbors(v)[i])
    }

    /// Pair (edge existence) query.
    pub fn pair(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.spend(|l| &mut l.pair_queries);
        Ok(self.graph.has_edge(u, v))
    }

    /// Uniform vertex draw; free (vertex ids are known to the algorithm).
    pub fn uniform_vertex<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize, GraphError> {
        if self.graph.n() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(rng.gen_range(0..self.graph.n()))
    }

    /// Uniform edge from `δ(v)` given the already-queried `degree` of `v`.
    /// Costs exactly one neighbor query.
    pub fn uniform_incident_edge<R: Rng + ?Sized>(
        &mut self,
        v: usize,
        degree: usize,
        rng: &mut R,
    ) -> Result<(usize, usize), GraphError> {
        if degree == 0 {
            return Err(GraphError::EmptyNeighborhood { vertex: v });
        }
        let i = rng.gen_range(0..degree);
        let w = self.neighbor(v, i)?;
        Ok((v, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k3() -> QueryGraph {
        QueryGraph::parse_edge_list("0 1\n1 2\n0 2").unwrap()
    }

    #[test]
    fn parse_k3() {
        let g = k3();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn parse_drops_loops_and_duplicates() {
        let g = QueryGraph::parse_edge_list("0 0\n0 1\n0 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn parse_header_forces_n() {
        let g = QueryGraph::parse_edge_list("# n=5\n0 1").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            QueryGraph::parse_edge_list("").unwrap_err(),
            ParseError::Empty
        );
        assert_eq!(
            QueryGraph::parse_edge_list("0 x").unwrap_err(),
            ParseError::Malformed { line: 1 }
        );
        assert_eq!(
            QueryGraph::parse_edge_list("0 1\n2").unwrap_err(),
            ParseError::Malformed { line: 2 }
        );
        assert!(matches!(
            QueryGraph::parse_edge_list("# n=2\n0 5").unwrap_err(),
            ParseError::VertexAboveHeader { vertex: 5, n: 2, .. }
        ));
    }

    #[test]
    fn degree_sum_is_twice_m() {
        let g = k3();
        let sum: usize = (0..g.n()).map(|v| g.degree_of(v)).sum();
        assert_eq!(sum, 2 * g.m());
    }

    #[test]
    fn queries_and_ledger() {
        let g = k3();
        let mut chan = QueryChannel::new(&g);
        assert_eq!(chan.degree(0).unwrap(), 2);
        assert_eq!(chan.neighbor(0, 0).unwrap(), 1); // sorted order
        assert!(chan.pair(0, 2).unwrap());
        assert_eq!(chan.ledger().degree_queries, 1);
        assert_eq!(chan.ledger().neighbor_queries, 1);
        assert_eq!(chan.ledger().pair_queries, 1);
        assert_eq!(chan.ledger().total(), 3);
    }

    #[test]
    fn pair_on_path_is_false() {
        let g = QueryGraph::parse_edge_list("0 1\n1 2").unwrap();
        let mut chan = QueryChannel::new(&g);
        assert!(!chan.pair(0, 2).unwrap());
    }

    #[test]
    fn out_of_range_is_rejected() {
        let g = k3();
        let mut chan = QueryChannel::new(&g);
        assert!(matches!(
            chan.degree(7),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 3 })
        ));
        assert!(matches!(
            chan.neighbor(0, 2),
            Err(GraphError::NeighborIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn incident_edge_uniformity_k3() {
        let g = k3();
        let mut chan = QueryChannel::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts = [0u32; 2];
        let draws = 100_000;
        for _ in 0..draws {
            let (_, w) = chan.uniform_incident_edge(0, 2, &mut rng).unwrap();
            counts[if w == 1 { 0 } else { 1 }] += 1;
        }
        // 3 sigma band around 1/2
        let sigma = (0.25 * draws as f64).sqrt();
        for c in counts {
            assert!((c as f64 - draws as f64 / 2.0).abs() < 3.0 * sigma);
        }
        assert_eq!(chan.ledger().neighbor_queries, draws as u64);
    }

    #[test]
    fn incident_edge_uniformity_star() {
        let g = QueryGraph::parse_edge_list("0 1\n0 2\n0 3").unwrap();
        let mut chan = QueryChannel::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = [0u32; 3];
        let draws = 90_000;
        for _ in 0..draws {
            let (_, w) = chan.uniform_incident_edge(0, 3, &mut rng).unwrap();
            counts[w - 1] += 1;
        }
        let expect = draws as f64 / 3.0;
        let sigma = (expect * (1.0 - 1.0 / 3.0)).sqrt();
        for c in counts {
            assert!((c as f64 - expect).abs() < 3.0 * sigma);
        }
    }

    #[test]
    fn incident_edge_on_isolated_vertex_errors() {
        let g = QueryGraph::from_edges(Some(3), [(0, 1)]);
        let mut chan = QueryChannel::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            chan.uniform_incident_edge(2, 0, &mut rng),
            Err(GraphError::EmptyNeighborhood { vertex: 2 })
        );
    }

    #[test]
    fn budget_triggers_fallback_on_second_query_unit() {
        let g = k3();
        let mut chan = QueryChannel::with_budget(&g, 1);
        chan.degree(0).unwrap();
        assert!(!chan.fallback_used());
        assert_eq!(chan.ledger().total(), 1);
        chan.degree(1).unwrap();
        assert!(chan.fallback_used());
        // scan cost: n degree + 2m neighbor queries, then free
        assert_eq!(chan.ledger().total(), 1 + 3 + 6);
        chan.pair(0, 1).unwrap();
        assert_eq!(chan.ledger().total(), 1 + 3 + 6);
    }

    #[test]
    fn degree_memoization_charges_once() {
        let g = k3();
        let mut chan = QueryChannel::new(&g).memoize_degrees();
        chan.degree(0).unwrap();
        chan.degree(0).unwrap();
        chan.degree(1).unwrap();
        assert_eq!(chan.ledger().degree_queries, 2);
    }

    #[test]
    fn budget_not_exceeded_keeps_flag_false() {
        let g = k3();
        let mut chan = QueryChannel::with_budget(&g, 100);
        for _ in 0..10 {
            chan.degree(0).unwrap();
        }
        assert!(!chan.fallback_used());
    }
}
