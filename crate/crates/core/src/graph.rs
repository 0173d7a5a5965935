//! Simple undirected graphs on dense vertex ids `0..n`, plus the JSON and
//! edge-list file formats.
//!
//! A [`Graph`] is immutable once built. Edges are stored canonically
//! (`u < v`, sorted lexicographically); that ordering drives both
//! serialization and [`GraphId`] hashing.

use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest vertex count the bitmask-based exact engines accept.
pub const MAX_EXACT_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a validated graph. Edge endpoints may come in either order;
    /// loops, duplicates and out-of-range endpoints are rejected. The
    /// `line` recorded in an error is the 1-based position of the edge in
    /// the input sequence.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_numbered(n, edges.into_iter().enumerate().map(|(i, e)| (i + 1, e)))
    }

    fn from_numbered<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, (Vertex, Vertex))>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut canon = Vec::new();
        for (line, (u, v)) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange {
                    line,
                    edge: (u, v),
                    n,
                });
            }
            if u == v {
                return Err(Error::Loop { line, edge: (u, v) });
            }
            if adj[u].contains(&v) {
                return Err(Error::DuplicateEdge { line, edge: (u, v) });
            }
            adj[u].push(v);
            adj[v].push(u);
            canon.push((u.min(v), u.max(v)));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        canon.sort_unstable();
        Ok(Self {
            n,
            edges: canon,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is simple")
    }

    /// Cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path graph `P_n` on `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path graph is simple")
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, edges).expect("petersen graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Copy of the graph with one edge removed (no-op when absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Self {
        let key = (u.min(v), u.max(v));
        Self::new(self.n, self.edges.iter().copied().filter(|&e| e != key))
            .expect("subgraph of a simple graph is simple")
    }

    /// Neighbourhood bitmasks for the exact engines.
    pub fn masks(&self, operation: &'static str) -> Result<Vec<u64>> {
        self.check_exact(operation, MAX_EXACT_VERTICES)?;
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1u64 << w)))
            .collect())
    }

    pub(crate) fn check_exact(&self, operation: &'static str, limit: usize) -> Result<()> {
        if self.n > limit {
            return Err(Error::TooLarge {
                operation,
                n: self.n,
                limit,
            });
        }
        Ok(())
    }

    pub fn id(&self) -> GraphId {
        GraphId::of(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("graph serializes")
    }

    pub fn to_edgelist(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

/// Stable identifier: either a user-supplied name or `g` followed by the
/// first 16 hex digits of the SHA-256 of the canonical edge list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GraphId(pub String);

impl GraphId {
    pub fn of(g: &Graph) -> Self {
        let digest = Sha256::digest(g.to_edgelist().as_bytes());
        GraphId(format!("g{}", &hex::encode(digest.as_slice())[..16]))
    }

    pub fn named(name: impl Into<String>) -> Self {
        GraphId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Edgelist,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "edgelist" | "txt" => Ok(Format::Edgelist),
            other => Err(Error::InvalidParameter(format!("unknown graph format {other:?}"))),
        }
    }
}

/// On-disk JSON shape: `{"n": 3, "edges": [[0,1],[1,2]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        Graph::new(file.n, file.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

pub fn load_graph<R: BufRead>(mut source: R, format: Format) -> Result<Graph> {
    match format {
        Format::Json => {
            let mut text = String::new();
            source.read_to_string(&mut text).map_err(|e| Error::Parse {
                line: 0,
                message: e.to_string(),
            })?;
            parse_json(&text)
        }
        Format::Edgelist => parse_edgelist(source),
    }
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    Graph::try_from(file)
}

fn parse_edgelist<R: BufRead>(source: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let pair = parse_pair(trimmed, lineno)?;
        match header {
            None => header = Some(pair),
            Some(_) => edges.push((lineno, pair)),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Graph::from_numbered(n, edges)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = fields.next().ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("{what} {tok:?} is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            message: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

pub fn save_graph<W: Write>(g: &Graph, format: Format, mut sink: W) -> std::io::Result<()> {
    match format {
        Format::Json => sink.write_all(g.to_json().as_bytes()),
        Format::Edgelist => sink.write_all(g.to_edgelist().as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_path_graph() {
        let g = parse_json(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn json_loop_rejected() {
        let err = parse_json(r#"{"n":2,"edges":[[0,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Loop { edge: (0, 0), .. }));
        assert!(err.to_string().contains("loop"));
    }

    #[test]
    fn duplicate_and_range_errors_name_the_edge() {
        let err = parse_json(r#"{"n":3,"edges":[[0,1],[1,0]]}"#).unwrap_err();
        assert_eq!(err, Error::DuplicateEdge { line: 2, edge: (1, 0) });
        let err = parse_json(r#"{"n":3,"edges":[[0,3]]}"#).unwrap_err();
        assert!(matches!(err, Error::OutOfRange { edge: (0, 3), n: 3, .. }));
    }

    #[test]
    fn edgelist_triangle() {
        let g = load_graph("3 3\n0 1\n1 2\n2 0\n".as_bytes(), Format::Edgelist).unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn edgelist_errors_carry_line_numbers() {
        let err = load_graph("3 2\n0 1\n1 1\n".as_bytes(), Format::Edgelist).unwrap_err();
        assert_eq!(err, Error::Loop { line: 3, edge: (1, 1) });
        let err = load_graph("3 2\n0 1\n1 x\n".as_bytes(), Format::Edgelist).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = load_graph("3 3\n0 1\n".as_bytes(), Format::Edgelist).unwrap_err();
        assert!(matches!(err, Error::EdgeCountMismatch { declared: 3, found: 1 }));
    }

    #[test]
    fn canonical_json_output() {
        let g = Graph::new(3, [(2, 1), (1, 0), (0, 2)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#);
        assert_eq!(Graph::empty(1).to_json(), r#"{"n":1,"edges":[]}"#);
    }

    #[test]
    fn graph_id_ignores_input_order() {
        let a = Graph::new(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let b = Graph::new(4, [(3, 2), (1, 0), (2, 1)]).unwrap();
        assert_eq!(a.id(), b.id());
        assert_ne!(a.id(), Graph::path(5).id());
        assert!(a.id().as_str().starts_with('g'));
    }

    #[test]
    fn exact_ops_reject_large_graphs() {
        let g = Graph::empty(65);
        assert!(matches!(g.masks("test"), Err(Error::TooLarge { n: 65, .. })));
    }

    #[test]
    fn petersen_is_cubic() {
        let g = Graph::petersen();
        assert_eq!(g.m(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
    }
}
