//! Std companion to `graphest-core`: file loading and report formats.

pub mod io;
pub mod report;
