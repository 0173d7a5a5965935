//! Graph families: the tight constructions where two longest paths meet
//! in exactly `k` vertices, complete bipartite graphs, and seeded random
//! `k`-connected graphs for sweeps.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFile, Vertex};
use crate::path::Path;

/// A tight-family instance.
///
/// Vertices: the separator `s_1..s_k` is `0..k`; then the `a`-chains
/// `a_{i,1}..a_{i,ell}` for `i = 1..=k+1` in row-major order; then the
/// `b`-chains likewise. Every separator vertex is adjacent to every
/// non-separator vertex, and consecutive chain vertices are adjacent.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub k: usize,
    pub ell: usize,
    pub graph: Graph,
    pub labels: BTreeMap<Vertex, String>,
    pub witness_p: Path,
    pub witness_q: Path,
}

impl FamilySpec {
    pub fn s(&self, i: usize) -> Vertex {
        i - 1
    }

    pub fn a(&self, i: usize, j: usize) -> Vertex {
        self.k + (i - 1) * self.ell + (j - 1)
    }

    pub fn b(&self, i: usize, j: usize) -> Vertex {
        self.k + (self.k + 1) * self.ell + (i - 1) * self.ell + (j - 1)
    }

    /// Vertex count of a longest path: `k + ell (k + 1)`.
    pub fn longest_order(&self) -> usize {
        self.k + self.ell * (self.k + 1)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            graph: GraphFile,
            labels: BTreeMap<String, &'a str>,
            witnesses: [&'a Path; 2],
        }
        let out = Out {
            graph: GraphFile::from(&self.graph),
            labels: self
                .labels
                .iter()
                .map(|(v, name)| (v.to_string(), name.as_str()))
                .collect(),
            witnesses: [&self.witness_p, &self.witness_q],
        };
        serde_json::to_string(&out).expect("family serializes")
    }
}

pub fn tight_family(k: usize, ell: usize) -> Result<FamilySpec> {
    if k == 0 || ell == 0 {
        return Err(Error::InvalidParameter(format!(
            "tight family needs k >= 1 and ell >= 1, got k={k}, ell={ell}"
        )));
    }
    let chains = k + 1;
    let n = k + 2 * chains * ell;
    let a = |i: usize, j: usize| k + (i - 1) * ell + (j - 1);
    let b = |i: usize, j: usize| k + chains * ell + (i - 1) * ell + (j - 1);

    let mut labels = BTreeMap::new();
    let mut edges = Vec::new();
    for i in 1..=k {
        labels.insert(i - 1, format!("s_{i}"));
        edges.extend((k..n).map(|v| (i - 1, v)));
    }
    for i in 1..=chains {
        for j in 1..=ell {
            labels.insert(a(i, j), format!("a_{i}_{j}"));
            labels.insert(b(i, j), format!("b_{i}_{j}"));
            if j < ell {
                edges.push((a(i, j), a(i, j + 1)));
                edges.push((b(i, j), b(i, j + 1)));
            }
        }
    }
    let graph = Graph::new(n, edges)?;

    let witness = |chain: &dyn Fn(usize, usize) -> Vertex| {
        let mut seq = Vec::new();
        for i in 1..=chains {
            seq.extend((1..=ell).map(|j| chain(i, j)));
            if i <= k {
                seq.push(i - 1);
            }
        }
        seq
    };
    let witness_p = Path::new(&graph, witness(&a))?;
    let witness_q = Path::new(&graph, witness(&b))?;
    Ok(FamilySpec {
        k,
        ell,
        graph,
        labels,
        witness_p,
        witness_q,
    })
}

/// `K_{a,b}` with left side `0..a` and right side `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(format!(
            "complete bipartite graph needs positive sides, got ({a}, {b})"
        )));
    }
    Graph::new(a + b, (0..a).flat_map(|l| (a..a + b).map(move |r| (l, r))))
}

/// Decodes the `idx`-th pair `(u, v)`, `u < v`, in lexicographic order.
fn pair_at(n: usize, mut idx: usize) -> (Vertex, Vertex) {
    for u in 0..n {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

/// Telemetry from [`random_k_connected`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sampled {
    pub graph: Graph,
    pub connectivity: usize,
    pub tries: usize,
}

/// Uniform `m`-edge graphs on `n` vertices, rejected until their vertex
/// connectivity reaches `k_min`. Deterministic in `(n, m, k_min, seed)`.
pub fn random_k_connected(
    n: usize,
    m: usize,
    k_min: usize,
    seed: u64,
    max_tries: usize,
) -> Result<Sampled> {
    let pairs = n * n.saturating_sub(1) / 2;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if m > pairs {
        return Err(Error::InvalidParameter(format!(
            "m={m} exceeds n(n-1)/2={pairs}"
        )));
    }
    if k_min == 0 {
        return Err(Error::InvalidParameter("k_min must be at least 1".into()));
    }
    if 2 * m < k_min * n {
        return Err(Error::InvalidParameter(format!(
            "m={m} is below the degree bound ceil(k_min*n/2)={}",
            (k_min * n).div_ceil(2)
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for tries in 1..=max_tries {
        let chosen = index::sample(&mut rng, pairs, m);
        let graph = Graph::new(n, chosen.iter().map(|i| pair_at(n, i)))?;
        let connectivity = vertex_connectivity(&graph)?;
        if connectivity >= k_min {
            return Ok(Sampled {
                graph,
                connectivity,
                tries,
            });
        }
    }
    Err(Error::Exhausted {
        tries: max_tries,
        n,
        m,
        k_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::intersection;
    use std::collections::BTreeSet;

    #[test]
    fn smallest_tight_family_is_a_star() {
        let f = tight_family(1, 1).unwrap();
        assert_eq!(f.graph.n(), 5);
        assert_eq!(f.graph.m(), 4);
        assert_eq!(f.graph.degree(0), 4);
        assert_eq!(f.witness_p.vertices(), &[f.a(1, 1), 0, f.a(2, 1)]);
        assert_eq!(f.witness_q.vertices(), &[f.b(1, 1), 0, f.b(2, 1)]);
        assert_eq!(intersection(&f.witness_p, &f.witness_q), BTreeSet::from([0]));
    }

    #[test]
    fn k2_ell1_is_k26() {
        let f = tight_family(2, 1).unwrap();
        assert_eq!(f.graph, complete_bipartite(2, 6).unwrap());
        assert_eq!(intersection(&f.witness_p, &f.witness_q), BTreeSet::from([0, 1]));
    }

    #[test]
    fn k2_ell2_shape() {
        let f = tight_family(2, 2).unwrap();
        assert_eq!(f.graph.n(), 14);
        assert_eq!(f.witness_p.order(), 8);
        assert_eq!(f.witness_q.order(), 8);
        assert_eq!(f.labels[&f.a(3, 2)], "a_3_2");
        assert_eq!(f.labels[&f.b(1, 1)], "b_1_1");
        // S to all 12 others, plus one edge in each of the 6 chains.
        assert_eq!(f.graph.m(), 2 * 12 + 6);
    }

    #[test]
    fn family_json_has_labels_and_witnesses() {
        let f = tight_family(1, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        assert_eq!(v["n"], 5);
        assert_eq!(v["labels"]["0"], "s_1");
        assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn parameter_errors() {
        assert!(tight_family(0, 1).is_err());
        assert!(tight_family(1, 0).is_err());
        assert!(complete_bipartite(0, 3).is_err());
        assert_eq!(complete_bipartite(1, 1).unwrap().edges(), &[(0, 1)]);
        assert_eq!(complete_bipartite(2, 6).unwrap().m(), 12);
        assert!(matches!(random_k_connected(6, 5, 3, 0, 10), Err(Error::InvalidParameter(_))));
        assert!(random_k_connected(4, 7, 1, 0, 10).is_err());
    }

    #[test]
    fn pair_decoding_covers_all_pairs() {
        let n = 6;
        let all: Vec<_> = (0..15).map(|i| pair_at(n, i)).collect();
        let expected: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn random_generation_is_deterministic() {
        let a = random_k_connected(8, 20, 4, 1, 10_000).unwrap();
        assert!(a.connectivity >= 4);
        assert_eq!(vertex_connectivity(&a.graph).unwrap(), a.connectivity);
        assert_eq!(a.graph.m(), 20);
        let b = random_k_connected(8, 20, 4, 1, 10_000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustion_is_reported() {
        // 7 edges on 7 vertices are 2-connected only when they form C_7.
        let err = random_k_connected(7, 7, 2, 3, 5).unwrap_err();
        assert_eq!(err, Error::Exhausted { tries: 5, n: 7, m: 7, k_min: 2 });
        assert!(matches!(random_k_connected(7, 7, 2, 3, 0), Err(Error::Exhausted { tries: 0, .. })));
    }
}
