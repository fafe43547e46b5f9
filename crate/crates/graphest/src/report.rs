//! Serializable run reports. Reports contain no wall-clock data, so the
//! same seed always serializes to the same bytes.

use graphest_core::avgdeg::AvgDegreeReport;
use graphest_core::triangle::TriangleReport;
use graphest_core::{GraphStats, QueryLedger};
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LedgerOut {
    pub degree: u64,
    pub neighbor: u64,
    pub pair: u64,
    pub total: u64,
}

impl From<QueryLedger> for LedgerOut {
    fn from(l: QueryLedger) -> Self {
        LedgerOut {
            degree: l.degree_queries,
            neighbor: l.neighbor_queries,
            pair: l.pair_queries,
            total: l.total(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GuessStep {
    pub guess: u64,
    pub estimate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleOut {
    pub algorithm: &'static str,
    pub estimate: f64,
    pub exact: Option<u64>,
    pub m_hat: u64,
    pub avg_degree: f64,
    pub eps: f64,
    pub internal_eps: f64,
    pub profile: &'static str,
    pub seed: u64,
    pub fallback_used: bool,
    pub cap_hit: bool,
    pub heavy_count: usize,
    pub runs: usize,
    pub guess_trace: Vec<GuessStep>,
    pub queries: LedgerOut,
    pub avg_queries: LedgerOut,
    /// Ground truth from the exact oracle, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
}

impl TriangleOut {
    pub fn new(report: &TriangleReport, reference: Option<u64>) -> Self {
        let relative_error = reference.map(|t| {
            if t == 0 {
                report.estimate.abs()
            } else {
                (report.estimate - t as f64).abs() / t as f64
            }
        });
        TriangleOut {
            algorithm: "triangles",
            estimate: report.estimate,
            exact: report.exact,
            m_hat: report.m_hat,
            avg_degree: report.avg_degree,
            eps: report.eps,
            internal_eps: report.internal_eps,
            profile: report.profile.name(),
            seed: report.master_seed,
            fallback_used: report.fallback_used,
            cap_hit: report.cap_hit,
            heavy_count: report.heavy_count,
            runs: report.runs,
            guess_trace: report
                .guess_trace
                .iter()
                .map(|&(guess, estimate)| GuessStep { guess, estimate })
                .collect(),
            queries: report.ledger.into(),
            avg_queries: report.avg_ledger.into(),
            reference,
            relative_error,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AvgDegreeOut {
    pub algorithm: &'static str,
    pub estimate: f64,
    pub m_hat: u64,
    pub eps: f64,
    pub profile: &'static str,
    pub seed: u64,
    pub confirmed_by_scan: bool,
    pub guess_trace: Vec<GuessStep>,
    pub max_run_queries: u64,
    pub queries: LedgerOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
}

impl AvgDegreeOut {
    pub fn new(
        report: &AvgDegreeReport,
        eps: f64,
        profile: &'static str,
        seed: u64,
        reference: Option<f64>,
    ) -> Self {
        let relative_error = reference.map(|d| {
            if d == 0.0 {
                report.estimate.abs()
            } else {
                (report.estimate - d).abs() / d
            }
        });
        AvgDegreeOut {
            algorithm: "avgdeg",
            estimate: report.estimate,
            m_hat: report.m_hat,
            eps,
            profile,
            seed,
            confirmed_by_scan: report.confirmed_by_scan,
            guess_trace: report
                .guess_trace
                .iter()
                .map(|&(guess, estimate)| GuessStep { guess, estimate })
                .collect(),
            max_run_queries: report.max_run_queries,
            queries: report.ledger.into(),
            reference,
            relative_error,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactOut {
    pub algorithm: &'static str,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub triangles: u64,
    pub avg_degree: f64,
    /// `Σ_e min(d_u, d_v)`, the edge-iterator work bound.
    pub min_endpoint_sum: u64,
}

impl ExactOut {
    pub fn new(
        stats: GraphStats,
        triangles: u64,
        avg_degree: f64,
        min_endpoint_sum: u64,
    ) -> Self {
        ExactOut {
            algorithm: "exact",
            n: stats.n,
            m: stats.m,
            max_degree: stats.max_degree,
            triangles,
            avg_degree,
            min_endpoint_sum,
        }
    }
}

/// Pretty JSON with a trailing newline; field order is fixed by the
/// struct definitions above.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
