//! Held–Karp style oracle: `reach[mask]` holds every vertex at which some
//! path covering exactly `mask` can end. Independent of the DFS engine.

use std::collections::{BinaryHeap, HashMap};

use crate::error::Result;
use crate::graph::{Graph, Vertex};

pub const DP_LIMIT: usize = 20;

pub(crate) struct DpTable {
    n: usize,
    adj: Vec<u32>,
    reach: Vec<u32>,
    pub order: usize,
}

impl DpTable {
    pub fn build(g: &Graph) -> Result<Self> {
        g.check_exact("subset dynamic program", DP_LIMIT)?;
        let n = g.n();
        let adj: Vec<u32> = g
            .masks("subset dynamic program")?
            .into_iter()
            .map(|m| m as u32)
            .collect();
        let mut reach = vec![0u32; 1 << n];
        for v in 0..n {
            reach[1 << v] = 1 << v;
        }
        let mut order = usize::from(n > 0);
        for mask in 1..(1usize << n) {
            let ends = reach[mask];
            if ends == 0 {
                continue;
            }
            order = order.max(mask.count_ones() as usize);
            let mut e = ends;
            while e != 0 {
                let v = e.trailing_zeros() as usize;
                e &= e - 1;
                let mut ext = adj[v] & !(mask as u32);
                while ext != 0 {
                    let w = ext.trailing_zeros();
                    ext &= ext - 1;
                    reach[mask | (1 << w)] |= 1 << w;
                }
            }
        }
        Ok(Self {
            n,
            adj,
            reach,
            order,
        })
    }

    /// Vertex sets of longest paths, ascending.
    pub fn final_masks(&self) -> Vec<u32> {
        (1..(1u32 << self.n))
            .filter(|&m| m.count_ones() as usize == self.order && self.reach[m as usize] != 0)
            .collect()
    }

    /// Directed paths covering exactly `mask` and ending at `end`.
    fn ways(&self, mask: u32, end: Vertex, memo: &mut HashMap<(u32, u8), u128>) -> u128 {
        if mask == 1 << end {
            return 1;
        }
        if let Some(&c) = memo.get(&(mask, end as u8)) {
            return c;
        }
        let rest = mask & !(1 << end);
        let mut prev = self.reach[rest as usize] & self.adj[end];
        let mut total = 0;
        while prev != 0 {
            let w = prev.trailing_zeros() as usize;
            prev &= prev - 1;
            total += self.ways(rest, w, memo);
        }
        memo.insert((mask, end as u8), total);
        total
    }

    pub fn count_directed(&self) -> u128 {
        let mut memo = HashMap::new();
        let mut total = 0;
        for mask in self.final_masks() {
            let mut ends = self.reach[mask as usize];
            while ends != 0 {
                let e = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                total += self.ways(mask, e, &mut memo);
            }
        }
        total
    }

    /// The `cap` lexicographically smallest canonical longest paths,
    /// sorted. Every path is reconstructed backwards from its end.
    pub fn smallest_paths(&self, cap: usize) -> Vec<Vec<Vertex>> {
        let mut heap: BinaryHeap<Vec<Vertex>> = BinaryHeap::new();
        let mut seq = Vec::with_capacity(self.order);
        for mask in self.final_masks() {
            let mut ends = self.reach[mask as usize];
            while ends != 0 {
                let e = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                seq.clear();
                seq.push(e);
                self.unwind(mask, e, &mut seq, &mut heap, cap);
            }
        }
        heap.into_sorted_vec()
    }

    fn unwind(
        &self,
        mask: u32,
        end: Vertex,
        seq: &mut Vec<Vertex>,
        heap: &mut BinaryHeap<Vec<Vertex>>,
        cap: usize,
    ) {
        if mask == 1 << end {
            // seq runs from the path's last vertex back to its first.
            let first = *seq.last().expect("non-empty");
            if self.order == 1 || first < seq[0] {
                let path: Vec<Vertex> = seq.iter().rev().copied().collect();
                if heap.len() < cap {
                    heap.push(path);
                } else if heap.peek().is_some_and(|top| path < *top) {
                    heap.pop();
                    heap.push(path);
                }
            }
            return;
        }
        let rest = mask & !(1 << end);
        let mut prev = self.reach[rest as usize] & self.adj[end];
        while prev != 0 {
            let w = prev.trailing_zeros() as usize;
            prev &= prev - 1;
            seq.push(w);
            self.unwind(rest, w, seq, heap, cap);
            seq.pop();
        }
    }
}
