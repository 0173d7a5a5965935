use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid edge {edge:?} (line {line}): loop")]
    Loop { line: usize, edge: (usize, usize) },

    #[error("invalid edge {edge:?} (line {line}): duplicate edge")]
    DuplicateEdge { line: usize, edge: (usize, usize) },

    #[error("invalid edge {edge:?} (line {line}): endpoint out of range for n={n}")]
    OutOfRange {
        line: usize,
        edge: (usize, usize),
        n: usize,
    },

    #[error("declared edge count {declared} does not match {found} edge lines")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error("graph too large for {operation}: n={n} exceeds limit {limit}")]
    TooLarge {
        operation: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {0} is not on the path")]
    VertexNotOnPath(usize),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("vertex {r} is not a graph neighbour of endpoint {end}")]
    NotNeighbor { end: usize, r: usize },

    #[error("rotation at {0} is degenerate: it is the successor of the endpoint")]
    DegenerateRotation(usize),

    #[error("exchange configuration violates: {0}")]
    InvalidExchange(String),

    #[error("infeasible: requested {requested} disjoint paths, at most {available} exist")]
    Infeasible { requested: usize, available: usize },

    #[error("census is truncated; the result would only be an upper bound")]
    TruncatedCensus,

    #[error("path of length {length} is not longest (L = {longest})")]
    NotLongest { length: usize, longest: usize },

    #[error("search exceeded its time budget")]
    Timeout,

    #[error("no graph accepted after {tries} tries (n={n}, m={m}, k_min={k_min})")]
    Exhausted {
        tries: usize,
        n: usize,
        m: usize,
        k_min: usize,
    },
}
