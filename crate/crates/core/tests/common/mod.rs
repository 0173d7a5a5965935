//! Shared corpus builders and brute-force oracles for the integration
//! tests. The oracles deliberately avoid the library's engines.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use lplab_core::families::{complete_bipartite, random_k_connected, tight_family};
use lplab_core::path::ExchangeConfig;
use lplab_core::{Graph, Path};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Entry {
    pub label: String,
    pub graph: Graph,
}

fn entry(label: impl Into<String>, graph: Graph) -> Entry {
    Entry {
        label: label.into(),
        graph,
    }
}

/// Seeded random connected graphs, `4 <= n <= 10`, over four densities,
/// deduplicated by content.
pub fn random_connected(seeds: u64) -> Vec<Entry> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 4..=10usize {
        let pairs = n * (n - 1) / 2;
        for d in [0.25, 0.4, 0.55, 0.75] {
            let m = ((d * pairs as f64).round() as usize).clamp(n - 1, pairs);
            for seed in 0..seeds {
                let Ok(s) = random_k_connected(n, m, 1, seed, 10_000) else {
                    continue;
                };
                if seen.insert(s.graph.id()) {
                    out.push(entry(format!("random n={n} m={m} seed={seed}"), s.graph));
                }
            }
        }
    }
    out
}

/// Seeded random 4-connected graphs, `6 <= n <= 11`. Samples are kept
/// even when two seeds land on the same graph.
pub fn random_four_connected(per_n: u64) -> Vec<Entry> {
    let mut out = Vec::new();
    for n in 6..=11usize {
        let pairs = n * (n - 1) / 2;
        for seed in 0..per_n {
            let d = [0.6, 0.7, 0.8][(seed % 3) as usize];
            let m = ((d * pairs as f64).round() as usize).clamp(2 * n, pairs);
            let s = random_k_connected(n, m, 4, 1000 + seed, 1_000_000)
                .expect("dense 4-connected samples exist");
            out.push(entry(format!("random4 n={n} m={m} seed={}", 1000 + seed), s.graph));
        }
    }
    out
}

pub fn families() -> Vec<Entry> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for ell in 1..=3 {
            out.push(entry(format!("tight k={k} ell={ell}"), tight_family(k, ell).unwrap().graph));
        }
    }
    for k in 1..=4 {
        out.push(entry(
            format!("K_{{{k},{}}}", 2 * k + 2),
            complete_bipartite(k, 2 * k + 2).unwrap(),
        ));
    }
    out
}

pub fn classics() -> Vec<Entry> {
    let mut out = vec![entry("petersen", Graph::petersen())];
    for n in 3..=8 {
        out.push(entry(format!("C_{n}"), Graph::cycle(n).unwrap()));
        out.push(entry(format!("K_{n}"), Graph::complete(n)));
    }
    for n in 2..=6 {
        out.push(entry(format!("P_{n}"), Graph::path(n)));
    }
    out
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// All simple paths by plain recursion; returns `L` and every longest
/// path in canonical orientation (first vertex below last).
pub fn brute_longest(g: &Graph) -> (usize, BTreeSet<Vec<usize>>) {
    fn go(
        a: &[Vec<bool>],
        path: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut usize,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        let len = path.len() - 1;
        if len > *best {
            *best = len;
            found.clear();
        }
        if len == *best && (len == 0 || path[0] < path[len]) {
            found.insert(path.clone());
        }
        let end = *path.last().unwrap();
        for next in 0..a.len() {
            if a[end][next] && !used[next] {
                used[next] = true;
                path.push(next);
                go(a, path, used, best, found);
                path.pop();
                used[next] = false;
            }
        }
    }
    let a = adjacency(g);
    let mut best = 0;
    let mut found = BTreeSet::new();
    for s in 0..g.n() {
        let mut used = vec![false; g.n()];
        used[s] = true;
        go(&a, &mut vec![s], &mut used, &mut best, &mut found);
    }
    (best, found)
}

fn connected_after_removing(a: &[Vec<bool>], removed: u32) -> bool {
    let n = a.len();
    let alive: Vec<usize> = (0..n).filter(|v| removed >> v & 1 == 0).collect();
    let Some(&start) = alive.first() else {
        return true;
    };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if a[x][y] && !seen[y] && removed >> y & 1 == 0 {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// Smallest separator by exhaustive subset search; `n - 1` for complete
/// graphs.
pub fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    if g.m() == n * (n - 1) / 2 {
        return n.saturating_sub(1);
    }
    let a = adjacency(g);
    let mut best = n;
    for s in 0u32..(1 << n) {
        let size = s.count_ones() as usize;
        if size < best && size + 2 <= n && !connected_after_removing(&a, s) {
            best = size;
        }
    }
    best
}

/// Hamiltonian cycle by DFS from vertex 0 over all orderings.
pub fn brute_ham_cycle(g: &Graph) -> bool {
    fn go(a: &[Vec<bool>], path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = a.len();
        let end = *path.last().unwrap();
        if path.len() == n {
            return a[end][0];
        }
        for next in 1..n {
            if a[end][next] && !used[next] {
                used[next] = true;
                path.push(next);
                if go(a, path, used) {
                    return true;
                }
                path.pop();
                used[next] = false;
            }
        }
        false
    }
    let n = g.n();
    if n < 3 {
        return false;
    }
    let a = adjacency(g);
    let mut used = vec![false; n];
    used[0] = true;
    go(&a, &mut vec![0], &mut used)
}

pub fn min_intersection(paths: &BTreeSet<Vec<usize>>) -> usize {
    let sets: BTreeSet<BTreeSet<usize>> =
        paths.iter().map(|p| p.iter().copied().collect()).collect();
    let sets: Vec<_> = sets.into_iter().collect();
    if sets.len() == 1 {
        return sets[0].len();
    }
    let mut best = usize::MAX;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            best = best.min(sets[i].intersection(&sets[j]).count());
        }
    }
    best
}

/// A random valid exchange configuration on a freshly built graph:
/// `P = a.. u p_1..p_t ..`, `Q = b.. u q_1..q_s ..`, bridge `v r.. w`,
/// plus noise edges and a random relabelling.
pub fn synthetic_exchange(seed: u64) -> (Graph, ExchangeConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pre_p = rng.gen_range(0..4);
    let run_p = rng.gen_range(1..4);
    let post_p = rng.gen_range(0..3);
    let pre_q = rng.gen_range(0..4);
    let run_q = rng.gen_range(1..4);
    let post_q = rng.gen_range(0..3);
    let bridge_inner = rng.gen_range(0..4);
    let n = 1 + pre_p + run_p + post_p + pre_q + run_q + post_q + bridge_inner;

    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut next = 0;
    let mut take = |k: usize| {
        let out: Vec<usize> = (next..next + k).map(|i| label[i]).collect();
        next += k;
        out
    };
    let u = take(1)[0];
    let (a, pr, pt) = (take(pre_p), take(run_p), take(post_p));
    let (b, qr, qt) = (take(pre_q), take(run_q), take(post_q));
    let inner = take(bridge_inner);
    let v = *pr.last().unwrap();
    let w = *qr.last().unwrap();

    let seq = |pre: &[usize], run: &[usize], post: &[usize]| {
        let mut s = pre.to_vec();
        s.push(u);
        s.extend_from_slice(run);
        s.extend_from_slice(post);
        s
    };
    let p_seq = seq(&a, &pr, &pt);
    let q_seq = seq(&b, &qr, &qt);
    let mut r_seq = vec![v];
    r_seq.extend_from_slice(&inner);
    r_seq.push(w);

    let mut edges = BTreeSet::new();
    for s in [&p_seq, &q_seq, &r_seq] {
        for e in s.windows(2) {
            edges.insert((e[0].min(e[1]), e[0].max(e[1])));
        }
    }
    for _ in 0..rng.gen_range(0..n) {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if x != y {
            edges.insert((x.min(y), x.max(y)));
        }
    }
    let g = Graph::new(n, edges).unwrap();
    let cfg = ExchangeConfig {
        p: Path::new(&g, p_seq).unwrap(),
        q: Path::new(&g, q_seq).unwrap(),
        u,
        v,
        w,
        r: Path::new(&g, r_seq).unwrap(),
    };
    (g, cfg)
}
