//! Vertex connectivity, internally disjoint paths and fans.
//!
//! Everything runs on the vertex-split network: vertex `x` becomes
//! `x_in -> x_out` with capacity one, and an undirected edge `{a, b}`
//! becomes the arcs `a_out -> b_in` and `b_out -> a_in`. Arcs are inserted
//! in ascending vertex order and augmenting paths are found by BFS, so the
//! lowest-numbered augmenting path wins and decompositions are
//! deterministic.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::path::Path;

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: u32,
    orig: u32,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, orig: cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            orig: 0,
        });
    }

    /// Edmonds–Karp, stopping once `limit` units have been pushed.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        let nodes = self.out.len();
        while flow < limit {
            let mut via = vec![usize::MAX; nodes];
            let mut seen = vec![false; nodes];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.out[x] {
                    let arc = self.arcs[a];
                    if arc.cap > 0 && !seen[arc.to] {
                        seen[arc.to] = true;
                        via[arc.to] = a;
                        if arc.to == sink {
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[sink] {
                break;
            }
            let mut x = sink;
            while x != source {
                let a = via[x];
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
                x = self.arcs[a ^ 1].to;
            }
            flow += 1;
        }
        flow
    }

    /// Splits the flow into unit paths, always following the
    /// lowest-indexed arc that still carries flow.
    fn decompose(&mut self, source: usize, sink: usize, units: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::with_capacity(units);
        for _ in 0..units {
            let mut nodes = vec![source];
            let mut x = source;
            while x != sink {
                let a = self.out[x]
                    .iter()
                    .copied()
                    .find(|&a| self.arcs[a].orig > 0 && self.arcs[a].cap < self.arcs[a].orig)
                    .expect("flow conservation");
                self.arcs[a].cap += 1;
                x = self.arcs[a].to;
                nodes.push(x);
            }
            paths.push(nodes);
        }
        paths
    }
}

const fn v_in(x: Vertex) -> usize {
    2 * x
}

const fn v_out(x: Vertex) -> usize {
    2 * x + 1
}

/// Network for internally disjoint `u`-`v` paths: source `u_out`, sink `v_in`.
fn pair_network(g: &Graph, u: Vertex, v: Vertex) -> Network {
    let mut net = Network::new(2 * g.n());
    for x in 0..g.n() {
        if x != u && x != v {
            net.add(v_in(x), v_out(x), 1);
        }
        for &y in g.neighbors(x) {
            net.add(v_out(x), v_in(y), 1);
        }
    }
    net
}

fn nodes_to_vertices(nodes: &[usize], stop: Option<usize>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    for &node in nodes {
        if Some(node) == stop {
            break;
        }
        let x = node / 2;
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

/// Maximum number of internally disjoint `u`-`v` paths, capped at `limit`.
pub fn local_connectivity(g: &Graph, u: Vertex, v: Vertex, limit: usize) -> usize {
    pair_network(g, u, v).max_flow(v_out(u), v_in(v), limit)
}

/// Largest `k` such that `g` is `k`-connected. Complete graphs get `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "vertex connectivity needs n >= 2, got {n}"
        )));
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let best = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut local = n - 1;
            for v in u + 1..n {
                if !g.has_edge(u, v) {
                    local = local.min(local_connectivity(g, u, v, local));
                }
            }
            local
        })
        .min()
        .unwrap_or(n - 1);
    Ok(best)
}

/// `k` pairwise internally disjoint `u`-`v` paths (a direct edge counts).
pub fn disjoint_paths(g: &Graph, u: Vertex, v: Vertex, k: usize) -> Result<Vec<Path>> {
    if u == v {
        return Err(Error::InvalidParameter("disjoint paths need u != v".into()));
    }
    if u >= g.n() || v >= g.n() {
        return Err(Error::InvalidParameter("endpoint out of range".into()));
    }
    let mut net = pair_network(g, u, v);
    let (source, sink) = (v_out(u), v_in(v));
    let flow = net.max_flow(source, sink, k);
    if flow < k {
        return Err(Error::Infeasible {
            requested: k,
            available: flow,
        });
    }
    Ok(net
        .decompose(source, sink, k)
        .iter()
        .map(|nodes| Path::from_trusted(nodes_to_vertices(nodes, None)))
        .collect())
}

/// `k` paths from `center` into `targets`, pairwise meeting only at the
/// center, with no internal vertex in `targets`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanResult {
    pub center: Vertex,
    pub targets: BTreeSet<Vertex>,
    pub paths: Vec<Path>,
}

impl FanResult {
    /// The fan endpoints, in path order.
    pub fn ends(&self) -> Vec<Vertex> {
        self.paths.iter().map(Path::last).collect()
    }

    /// Re-checks every structural fan property against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPath(m));
        let mut used = BTreeSet::new();
        for p in &self.paths {
            Path::new(g, p.vertices().to_vec())?;
            if p.first() != self.center {
                return bad(format!("fan path {p} does not start at {}", self.center));
            }
            if !self.targets.contains(&p.last()) {
                return bad(format!("fan path {p} does not end in the target set"));
            }
            let inner = &p.vertices()[1..p.order() - 1];
            if inner.iter().any(|x| self.targets.contains(x)) {
                return bad(format!("fan path {p} has an internal target vertex"));
            }
            for &x in &p.vertices()[1..] {
                if !used.insert(x) {
                    return bad(format!("vertex {x} is shared by two fan paths"));
                }
            }
        }
        Ok(())
    }
}

/// Fan of `k` internally disjoint `center`-`targets` paths, realized as a
/// flow from `center` to a virtual sink fed by every target.
pub fn fan(g: &Graph, center: Vertex, targets: &BTreeSet<Vertex>, k: usize) -> Result<FanResult> {
    let n = g.n();
    if center >= n || targets.iter().any(|&s| s >= n) {
        return Err(Error::InvalidParameter("fan vertex out of range".into()));
    }
    if targets.contains(&center) {
        return Err(Error::InvalidParameter(format!(
            "fan center {center} lies in the target set"
        )));
    }
    if targets.len() < k {
        return Err(Error::InvalidParameter(format!(
            "target set has {} vertices, fewer than k={k}",
            targets.len()
        )));
    }
    let sink = 2 * n;
    let mut net = Network::new(2 * n + 1);
    for x in 0..n {
        if targets.contains(&x) {
            net.add(v_in(x), sink, 1);
            continue;
        }
        if x != center {
            net.add(v_in(x), v_out(x), 1);
        }
        for &y in g.neighbors(x) {
            net.add(v_out(x), v_in(y), 1);
        }
    }
    let source = v_out(center);
    let flow = net.max_flow(source, sink, k);
    if flow < k {
        return Err(Error::Infeasible {
            requested: k,
            available: flow,
        });
    }
    let paths = net
        .decompose(source, sink, k)
        .iter()
        .map(|nodes| Path::from_trusted(nodes_to_vertices(nodes, Some(sink))))
        .collect();
    Ok(FanResult {
        center,
        targets: targets.clone(),
        paths,
    })
}
