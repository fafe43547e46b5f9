//! Sublinear-time estimation of a graph's triangle count and average degree
//! in the query model where only degree, i-th neighbor, and pair (edge
//! existence) queries are allowed.
//!
//! The crate also ships exact counters so every estimator can be checked
//! against ground truth at desk scale.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `graphest` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod avgdeg;
pub mod error;
pub mod gen;
pub mod graph;
pub mod heavy;
pub mod oracle;
pub mod params;
pub mod rng;
pub mod sampler;
pub mod triangle;

pub use error::{GraphError, ParseError};
pub use graph::{GraphStats, QueryChannel, QueryGraph, QueryLedger};
pub use heavy::{HeavyLabeler, Label};
pub use oracle::TriangleOracle;
pub use params::{GuessContext, Profile, SearchOptions};
pub use triangle::{TriangleReport, TriangleWeight};

mod math {
    //! Thin wrappers so the estimator code reads naturally under `no_std`.

    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    #[inline]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }

    #[inline]
    pub fn cbrt(x: f64) -> f64 {
        libm::cbrt(x)
    }

    #[inline]
    pub fn powf(x: f64, y: f64) -> f64 {
        libm::pow(x, y)
    }

    #[inline]
    pub fn ceil(x: f64) -> f64 {
        libm::ceil(x)
    }

    #[inline]
    pub fn round(x: f64) -> f64 {
        libm::round(x)
    }

    /// `ceil` of a non-negative quantity as a sample count, at least `min`.
    #[inline]
    pub fn ceil_count(x: f64, min: usize) -> usize {
        if !x.is_finite() || x <= 0.0 {
            return min;
        }
        let c = ceil(x) as usize;
        c.max(min)
    }
}
