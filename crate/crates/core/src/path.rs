//! Path algebra: subpaths, distances along a path, vertex intersections,
//! Pósa rotation and the two-path exchange surgery.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A simple path, stored as an ordered vertex sequence.
///
/// Two paths compare equal when one is the reversal of the other; the
/// canonical orientation is the lexicographically smaller sequence.
/// Serialization always emits the canonical orientation.
#[derive(Clone, Debug)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    /// Validates `vertices` as a non-empty simple path in `g`.
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; g.n()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= g.n() {
                return Err(Error::InvalidPath(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Error::InvalidPath(format!("vertex {v} repeats")));
            }
            seen[v] = true;
            if i > 0 && !g.has_edge(vertices[i - 1], v) {
                return Err(Error::InvalidPath(format!(
                    "{} and {v} are not adjacent",
                    vertices[i - 1]
                )));
            }
        }
        Ok(Self { vertices })
    }

    /// Wraps a sequence the caller already knows to be a simple path.
    pub(crate) fn from_trusted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edge count `|P|`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("paths are non-empty")
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_extreme(&self, v: Vertex) -> bool {
        self.first() == v || self.last() == v
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    pub fn is_canonical(&self) -> bool {
        self.vertices.iter().le(self.vertices.iter().rev())
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.reversed()
        }
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices.iter().copied().collect()
    }

    /// Bitmask of the vertex set; only meaningful for `n <= 64`.
    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | (1u64 << v))
    }

    /// `P[x, y]`, oriented from `x` to `y`.
    pub fn subpath(&self, x: Vertex, y: Vertex) -> Result<Path> {
        let i = self.position(x).ok_or(Error::VertexNotOnPath(x))?;
        let j = self.position(y).ok_or(Error::VertexNotOnPath(y))?;
        let vertices = if i <= j {
            self.vertices[i..=j].to_vec()
        } else {
            self.vertices[j..=i].iter().rev().copied().collect()
        };
        Ok(Path { vertices })
    }

    /// `dist_P(x, y)`: the length of `P[x, y]`.
    pub fn dist(&self, x: Vertex, y: Vertex) -> Result<usize> {
        let i = self.position(x).ok_or(Error::VertexNotOnPath(x))?;
        let j = self.position(y).ok_or(Error::VertexNotOnPath(y))?;
        Ok(i.abs_diff(j))
    }
}

impl PartialEq for Path {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices || self.vertices.iter().eq(other.vertices.iter().rev())
    }
}

impl Eq for Path {}

impl Hash for Path {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.is_canonical() {
            self.vertices.hash(state);
        } else {
            self.reversed().vertices.hash(state);
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical().vertices.cmp(&other.canonical().vertices)
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.canonical().vertices.serialize(serializer)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `V(P) ∩ V(Q)`.
pub fn intersection(p: &Path, q: &Path) -> BTreeSet<Vertex> {
    let qs = q.vertex_set();
    p.vertices.iter().copied().filter(|v| qs.contains(v)).collect()
}

/// Pósa rotation at the front endpoint of `q`.
///
/// With `q = [q0, .., q_{j-1}, r, ..]` and `q0 ~ r` in `g`, returns
/// `[q_{j-1}, .., q0, r, ..]`: same vertex set and length, new front
/// endpoint `q_{j-1}`. Reverse first to rotate at the other end.
pub fn posa_rotate(g: &Graph, q: &Path, r: Vertex) -> Result<Path> {
    let j = q.position(r).ok_or(Error::VertexNotOnPath(r))?;
    let end = q.first();
    if !g.has_edge(end, r) {
        return Err(Error::NotNeighbor { end, r });
    }
    if j == 1 {
        return Err(Error::DegenerateRotation(r));
    }
    let mut vertices: Vec<Vertex> = q.vertices[..j].iter().rev().copied().collect();
    vertices.extend_from_slice(&q.vertices[j..]);
    Ok(Path { vertices })
}

/// Two paths sharing `u`, with private tails `P[u,v]` and `Q[u,w]` and a
/// `v`-`w` bridge `r` avoiding both paths internally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeConfig {
    pub p: Path,
    pub q: Path,
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    pub r: Path,
}

impl ExchangeConfig {
    /// Checks every structural condition, naming the first one that fails.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidExchange(msg.to_string()));
        let (p, q, r) = (&self.p, &self.q, &self.r);
        if !(p.contains(self.u) && q.contains(self.u)) {
            return fail("u in V(P) and V(Q)");
        }
        if !p.contains(self.v) || q.contains(self.v) {
            return fail("v in V(P) \\ V(Q)");
        }
        if !q.contains(self.w) || p.contains(self.w) {
            return fail("w in V(Q) \\ V(P)");
        }
        let pv = p.subpath(self.u, self.v)?;
        if pv.vertices[1..pv.vertices.len() - 1].iter().any(|&x| q.contains(x)) {
            return fail("P[u,v] internally disjoint from Q");
        }
        let qw = q.subpath(self.u, self.w)?;
        if qw.vertices[1..qw.vertices.len() - 1].iter().any(|&x| p.contains(x)) {
            return fail("Q[u,w] internally disjoint from P");
        }
        let ends_ok = (r.first() == self.v && r.last() == self.w)
            || (r.first() == self.w && r.last() == self.v);
        if !ends_ok {
            return fail("R joins v and w");
        }
        let inner = &r.vertices[1..r.vertices.len() - 1];
        if inner.iter().any(|&x| p.contains(x) || q.contains(x)) {
            return fail("R internally disjoint from P and Q");
        }
        Ok(())
    }
}

/// Builds `P - P[u,v] + R + Q[u,w]` and `Q - Q[u,w] + R + P[u,v]`.
///
/// Their lengths sum to `|P| + |Q| + 2|R|`.
pub fn exchange(g: &Graph, cfg: &ExchangeConfig) -> Result<(Path, Path)> {
    cfg.validate()?;
    let r_vw = if cfg.r.first() == cfg.v {
        cfg.r.clone()
    } else {
        cfg.r.reversed()
    };
    let r_wv = r_vw.reversed();
    let first = splice(&cfg.p, cfg.u, cfg.v, &cfg.q, cfg.w, &r_wv)?;
    let second = splice(&cfg.q, cfg.u, cfg.w, &cfg.p, cfg.v, &r_vw)?;
    Ok((Path::new(g, first)?, Path::new(g, second)?))
}

/// Replaces `host[u, tail]` by `other[u, far]` followed by `bridge`
/// (running from `far` to `tail`), keeping the rest of `host` on both sides.
fn splice(
    host: &Path,
    u: Vertex,
    tail: Vertex,
    other: &Path,
    far: Vertex,
    bridge: &Path,
) -> Result<Vec<Vertex>> {
    let oriented = if host.position(u) < host.position(tail) {
        host.clone()
    } else {
        host.reversed()
    };
    let iu = oriented.position(u).ok_or(Error::VertexNotOnPath(u))?;
    let it = oriented.position(tail).ok_or(Error::VertexNotOnPath(tail))?;
    let detour = other.subpath(u, far)?;
    let mut out = oriented.vertices[..=iu].to_vec();
    out.extend_from_slice(&detour.vertices[1..]);
    out.extend_from_slice(&bridge.vertices[1..bridge.vertices.len() - 1]);
    out.extend_from_slice(&oriented.vertices[it..]);
    let unique: BTreeSet<Vertex> = out.iter().copied().collect();
    if unique.len() != out.len() {
        return Err(Error::InvalidExchange(
            "produced sequence revisits a vertex".into(),
        ));
    }
    Ok(out)
}

/// Vertices reachable from `u` along `path` (in one direction) before the
/// walk first meets `blocked`. These are the valid tail ends `v` with
/// `P[u,v]` internally disjoint from the blocked path.
fn private_run(path: &Path, u: Vertex, blocked: &[bool]) -> Vec<Vertex> {
    let mut out = Vec::new();
    let i = path.position(u).expect("u lies on the path");
    for step in [-1isize, 1] {
        let mut j = i as isize + step;
        while j >= 0 && (j as usize) < path.vertices.len() {
            let x = path.vertices[j as usize];
            if blocked[x] {
                break;
            }
            out.push(x);
            j += step;
        }
    }
    out
}

/// Searches all `(u, v, w)` triples and `v`-`w` bridges avoiding both
/// paths internally. Returns the configuration with the shortest bridge,
/// ties broken by `(u, v, w)`; `None` when none exists (always the case
/// when both paths are longest).
pub fn find_exchange_config(g: &Graph, p: &Path, q: &Path) -> Option<ExchangeConfig> {
    let n = g.n();
    let mut on_p = vec![false; n];
    let mut on_q = vec![false; n];
    p.vertices.iter().for_each(|&v| on_p[v] = true);
    q.vertices.iter().for_each(|&v| on_q[v] = true);
    let shared: Vec<Vertex> = (0..n).filter(|&v| on_p[v] && on_q[v]).collect();
    if shared.is_empty() || shared.len() == p.order() || shared.len() == q.order() {
        return None;
    }

    let mut bridge_cache: Vec<Option<Vec<Option<Vec<Vertex>>>>> = vec![None; n];
    let mut best: Option<(usize, Vertex, Vertex, Vertex, Vec<Vertex>)> = None;
    for &u in &shared {
        let mut vs = private_run(p, u, &on_q);
        let mut ws = private_run(q, u, &on_p);
        vs.sort_unstable();
        ws.sort_unstable();
        for &v in &vs {
            let bridges = bridge_cache[v]
                .get_or_insert_with(|| bridges_from(g, v, &on_p, &on_q));
            for &w in &ws {
                if let Some(r) = &bridges[w] {
                    let key = (r.len(), u, v, w);
                    if best.as_ref().is_none_or(|b| key < (b.4.len(), b.1, b.2, b.3)) {
                        best = Some((r.len(), u, v, w, r.clone()));
                    }
                }
            }
        }
    }
    best.map(|(_, u, v, w, r)| ExchangeConfig {
        p: p.clone(),
        q: q.clone(),
        u,
        v,
        w,
        r: Path::from_trusted(r),
    })
}

/// Shortest `v`-`x` paths whose internal vertices avoid both paths, for
/// every `x`. BFS expands neighbours in ascending order.
fn bridges_from(g: &Graph, v: Vertex, on_p: &[bool], on_q: &[bool]) -> Vec<Option<Vec<Vertex>>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut reached = vec![false; n];
    reached[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if reached[y] {
                continue;
            }
            reached[y] = true;
            parent[y] = x;
            if !on_p[y] && !on_q[y] {
                queue.push_back(y);
            }
        }
    }
    (0..n)
        .map(|x| {
            if x == v || !reached[x] {
                return None;
            }
            let mut seq = vec![x];
            let mut cur = x;
            while cur != v {
                cur = parent[cur];
                seq.push(cur);
            }
            seq.reverse();
            Some(seq)
        })
        .collect()
}
