use core::fmt;

/// Contract violations against the query model or oracle preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Vertex id is `>= n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// Neighbor index is `>= degree(v)`.
    NeighborIndexOutOfRange {
        vertex: usize,
        index: usize,
        degree: usize,
    },
    /// An incident-edge draw was requested for a degree-zero vertex.
    EmptyNeighborhood { vertex: usize },
    /// The operation is undefined on an empty graph.
    EmptyGraph,
    /// Brute-force enumeration refused: the graph exceeds its size guard.
    TooLarge { n: usize, limit: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range (n = {n})")
            }
            GraphError::NeighborIndexOutOfRange {
                vertex,
                index,
                degree,
            } => write!(
                f,
                "neighbor index {index} out of range for vertex {vertex} (degree {degree})"
            ),
            GraphError::EmptyNeighborhood { vertex } => {
                write!(f, "vertex {vertex} has no incident edges")
            }
            GraphError::EmptyGraph => write!(f, "operation undefined on an empty graph"),
            GraphError::TooLarge { n, limit } => {
                write!(f, "graph too large for brute force (n = {n}, limit {limit})")
            }
        }
    }
}

/// Edge-list parse failures, reported with a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// A line had a token that is not a non-negative integer, or the wrong
    /// number of tokens.
    Malformed { line: usize },
    /// `# n=<N>` header with an unreadable count.
    BadHeader { line: usize },
    /// A vertex id is not below the header-forced vertex count.
    VertexAboveHeader { line: usize, vertex: usize, n: usize },
    /// No edges and no header.
    Empty,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Malformed { line } => write!(f, "malformed edge on line {line}"),
            ParseError::BadHeader { line } => write!(f, "malformed header on line {line}"),
            ParseError::VertexAboveHeader { line, vertex, n } => write!(
                f,
                "vertex {vertex} on line {line} exceeds header vertex count {n}"
            ),
            ParseError::Empty => write!(f, "empty edge list"),
        }
    }
}
