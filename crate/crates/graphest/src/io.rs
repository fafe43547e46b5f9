//! Graph loading from edge-list files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use graphest_core::QueryGraph;

/// Loads a whitespace edge list (`u v` per line, `#` comments, optional
/// `# n=<N>` header).
pub fn load_edge_list(path: &Path) -> Result<QueryGraph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    QueryGraph::parse_edge_list(&text)
        .map_err(|e| anyhow::anyhow!("parsing {}: {e}", path.display()))
}
