//! Branch-and-bound depth-first search over simple paths on bitmask
//! graphs (`n <= 64`).
//!
//! A search state is `(visited, end)`. Everything reachable from a state
//! depends on nothing else, so states are memoized: the maximization pass
//! skips states it has already expanded, and the enumeration pass caches
//! the number of longest completions per state.

use std::collections::{HashMap, HashSet};

use crate::budget::Budget;
use crate::error::Result;
use crate::graph::{Graph, Vertex};

/// Memo tables stop growing past this many entries; search stays exact,
/// it only loses the shortcut.
const MEMO_LIMIT: usize = 1 << 23;

pub(crate) struct BitGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    /// Vertices whose degree exceeds the average; used as the separator
    /// candidates in [`BitGraph::extension_bound`].
    hubs: u64,
}

#[inline]
fn bits(mut m: u64) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as Vertex;
            m &= m - 1;
            Some(v)
        }
    })
}

impl BitGraph {
    pub fn new(g: &Graph, operation: &'static str) -> Result<Self> {
        let adj = g.masks(operation)?;
        let n = g.n();
        let hubs = if n == 0 {
            0
        } else {
            (0..n)
                .filter(|&v| g.degree(v) * n > 2 * g.m())
                .fold(0u64, |m, v| m | (1 << v))
        };
        Ok(Self { n, adj, hubs })
    }

    pub fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Flood fill from `seed` inside `allowed`.
    #[inline]
    fn closure(&self, seed: u64, allowed: u64) -> u64 {
        let mut reached = seed & allowed;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !reached;
            reached |= next;
            frontier = next;
        }
        reached
    }

    /// Upper bound on how many more vertices a simple path currently
    /// ending at `end` (having used `visited`) can still collect.
    ///
    /// Let `R` be the unvisited vertices reachable from `end`, `T` the
    /// hub vertices in `R` (`t = |T|`) and `C_1 >= C_2 >= ..` the
    /// components of `R - T`. The continuation alternates between runs
    /// inside single components and vertices of `T`, so it has at most
    /// `t + 1` runs, and exactly `t` unless the first run starts in a
    /// component adjacent to `end`. That gives
    /// `t + |C_1| + .. + |C_t| + extra`, where `extra` is the best size a
    /// component adjacent to `end` can add as the additional run.
    pub fn extension_bound(&self, visited: u64, end: Vertex) -> usize {
        let free = self.all() & !visited;
        let reach = self.closure(self.adj[end] & free, free);
        let plain = reach.count_ones() as usize;
        let hubs = reach & self.hubs;
        let t = hubs.count_ones() as usize;
        if t == 0 || plain <= 2 * t + 1 {
            return plain;
        }
        let rest = reach & !hubs;
        let near = self.adj[end];
        let mut comps: Vec<(usize, bool)> = Vec::new();
        let mut left = rest;
        while left != 0 {
            let seed = left & left.wrapping_neg();
            let comp = self.closure(seed, rest);
            left &= !comp;
            comps.push((comp.count_ones() as usize, comp & near != 0));
        }
        comps.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let top: usize = comps.iter().take(t).map(|c| c.0).sum();
        let extra = match comps.iter().position(|c| c.1) {
            None => 0,
            Some(i) if i < t => comps.get(t).map_or(0, |c| c.0),
            Some(i) => comps[i].0,
        };
        plain.min(t + top + extra)
    }
}

/// Vertex count of a longest path (`L + 1`). Requires `n >= 1`.
pub(crate) fn longest_order(bg: &BitGraph, budget: &Budget) -> Result<usize> {
    struct Max<'a> {
        bg: &'a BitGraph,
        budget: &'a Budget,
        best: usize,
        seen: HashSet<(u64, u8)>,
    }
    impl Max<'_> {
        fn go(&mut self, visited: u64, end: Vertex, count: usize) -> Result<()> {
            self.budget.tick()?;
            if count > self.best {
                self.best = count;
            }
            if self.best == self.bg.n {
                return Ok(());
            }
            if count + self.bg.extension_bound(visited, end) <= self.best {
                return Ok(());
            }
            if self.seen.len() < MEMO_LIMIT && !self.seen.insert((visited, end as u8)) {
                return Ok(());
            }
            for w in bits(self.bg.adj[end] & !visited) {
                self.go(visited | (1 << w), w, count + 1)?;
                if self.best == self.bg.n {
                    break;
                }
            }
            Ok(())
        }
    }
    let mut search = Max {
        bg,
        budget,
        best: 1,
        seen: HashSet::new(),
    };
    for v in 0..bg.n {
        search.go(1 << v, v, 1)?;
        if search.best == bg.n {
            break;
        }
    }
    Ok(search.best)
}

/// Exact enumeration of longest paths with a fixed target vertex count.
pub(crate) struct Enumerator<'a> {
    bg: &'a BitGraph,
    budget: &'a Budget,
    target: usize,
    completions: HashMap<(u64, u8), u128>,
    pub vertex_sets: HashSet<u64>,
}

impl<'a> Enumerator<'a> {
    pub fn new(bg: &'a BitGraph, budget: &'a Budget, target: usize) -> Self {
        Self {
            bg,
            budget,
            target,
            completions: HashMap::new(),
            vertex_sets: HashSet::new(),
        }
    }

    /// Number of directed longest paths that extend the state.
    fn count_from(&mut self, visited: u64, end: Vertex, count: usize) -> Result<u128> {
        if count == self.target {
            self.vertex_sets.insert(visited);
            return Ok(1);
        }
        let key = (visited, end as u8);
        if let Some(&c) = self.completions.get(&key) {
            return Ok(c);
        }
        self.budget.tick()?;
        let mut total = 0u128;
        if count + self.bg.extension_bound(visited, end) >= self.target {
            for w in bits(self.bg.adj[end] & !visited) {
                total += self.count_from(visited | (1 << w), w, count + 1)?;
            }
        }
        if self.completions.len() < MEMO_LIMIT {
            self.completions.insert(key, total);
        }
        Ok(total)
    }

    /// Directed longest-path count (each undirected path of positive
    /// length appears twice).
    pub fn count_directed(&mut self) -> Result<u128> {
        let mut total = 0;
        for v in 0..self.bg.n {
            total += self.count_from(1 << v, v, 1)?;
        }
        Ok(total)
    }

    /// Lexicographically first `cap` canonical longest paths. Call after
    /// [`Self::count_directed`] so dead states are already known.
    pub fn list(&mut self, cap: usize) -> Result<Vec<Vec<Vertex>>> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(self.target);
        for v in 0..self.bg.n {
            if out.len() >= cap {
                break;
            }
            stack.clear();
            stack.push(v);
            self.list_from(1 << v, v, &mut stack, &mut out, cap)?;
        }
        Ok(out)
    }

    fn list_from(
        &mut self,
        visited: u64,
        end: Vertex,
        stack: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
        cap: usize,
    ) -> Result<()> {
        if stack.len() == self.target {
            if self.target == 1 || stack[0] < end {
                out.push(stack.clone());
            }
            return Ok(());
        }
        if self.count_from(visited, end, stack.len())? == 0 {
            return Ok(());
        }
        for w in bits(self.bg.adj[end] & !visited) {
            if out.len() >= cap {
                break;
            }
            // Canonical orientation needs first < last, so the last vertex
            // can never be below the first one.
            if stack.len() + 1 == self.target && self.target > 1 && w < stack[0] {
                continue;
            }
            stack.push(w);
            self.list_from(visited | (1 << w), w, stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }
}

/// Hamiltonian cycle detection: a Hamiltonian path search rooted at
/// vertex 0 that must close back onto it.
pub(crate) fn has_hamiltonian_cycle(bg: &BitGraph, budget: &Budget) -> Result<bool> {
    if bg.n < 3 {
        return Ok(false);
    }
    struct Cycle<'a> {
        bg: &'a BitGraph,
        budget: &'a Budget,
        dead: HashSet<(u64, u8)>,
    }
    impl Cycle<'_> {
        fn go(&mut self, visited: u64, end: Vertex, count: usize) -> Result<bool> {
            self.budget.tick()?;
            if count == self.bg.n {
                return Ok(self.bg.adj[end] & 1 != 0);
            }
            if count + self.bg.extension_bound(visited, end) < self.bg.n {
                return Ok(false);
            }
            // The root must stay reachable for the cycle to close.
            let free = self.bg.all() & !visited;
            if self.bg.closure(self.bg.adj[0] & free, free) != free {
                return Ok(false);
            }
            let key = (visited, end as u8);
            if self.dead.contains(&key) {
                return Ok(false);
            }
            for w in bits(self.bg.adj[end] & !visited) {
                if self.go(visited | (1 << w), w, count + 1)? {
                    return Ok(true);
                }
            }
            if self.dead.len() < MEMO_LIMIT {
                self.dead.insert(key);
            }
            Ok(false)
        }
    }
    let mut search = Cycle {
        bg,
        budget,
        dead: HashSet::new(),
    };
    search.go(1, 0, 1)
}
