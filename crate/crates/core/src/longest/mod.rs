//! Exact longest-path measurement.
//!
//! Two independent engines produce a [`LongestPathCensus`]: a
//! branch-and-bound DFS (up to 64 vertices) and a subset dynamic program
//! (up to 20 vertices). Paths are deduplicated up to reversal and listed
//! in canonical orientation, lexicographically sorted.

mod dp;
mod search;

use std::collections::HashSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphId};
use crate::path::Path;

pub use dp::DP_LIMIT;
use search::{BitGraph, Enumerator};

pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Dfs,
    Dp,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dfs" => Ok(Engine::Dfs),
            "dp" => Ok(Engine::Dp),
            other => Err(Error::InvalidParameter(format!("unknown engine {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LongestPathCensus {
    pub graph_id: GraphId,
    /// `L`, in edges.
    #[serde(rename = "L")]
    pub length: usize,
    /// Distinct longest paths up to reversal (exact even when truncated).
    pub count: u128,
    pub truncated: bool,
    pub paths: Vec<Path>,
    pub engine: Engine,
    /// Every distinct vertex set of a longest path, as bitmasks; always
    /// exhaustive, independent of `truncated`.
    #[serde(skip)]
    pub vertex_sets: Vec<u64>,
}

impl LongestPathCensus {
    pub fn order(&self) -> usize {
        self.length + 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("census serializes")
    }
}

fn undirected(directed: u128, order: usize) -> u128 {
    if order == 1 {
        directed
    } else {
        directed / 2
    }
}

fn check_cap(cap: usize) -> Result<()> {
    if cap == 0 {
        return Err(Error::InvalidParameter("census cap must be positive".into()));
    }
    Ok(())
}

fn check_nonempty(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    Ok(())
}

/// Longest path length `L` (edges).
pub fn longest_length(g: &Graph, budget: &Budget) -> Result<usize> {
    check_nonempty(g)?;
    let bg = BitGraph::new(g, "longest path search")?;
    Ok(search::longest_order(&bg, budget)? - 1)
}

/// Exhaustive census by branch-and-bound DFS. `cap` bounds the listed
/// paths (default [`DEFAULT_CAP`]); `count` and `vertex_sets` are exact
/// regardless.
pub fn longest_path_dfs(g: &Graph, cap: Option<usize>) -> Result<LongestPathCensus> {
    longest_path_dfs_with(g, cap, &Budget::unlimited())
}

pub fn longest_path_dfs_with(
    g: &Graph,
    cap: Option<usize>,
    budget: &Budget,
) -> Result<LongestPathCensus> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    check_cap(cap)?;
    check_nonempty(g)?;
    let bg = BitGraph::new(g, "longest path search")?;
    let order = search::longest_order(&bg, budget)?;
    let mut en = Enumerator::new(&bg, budget, order);
    let count = undirected(en.count_directed()?, order);
    let listed = en.list(cap)?;
    let mut vertex_sets: Vec<u64> = en.vertex_sets.iter().copied().collect();
    vertex_sets.sort_unstable();
    debug_assert!(count > cap as u128 || listed.len() as u128 == count);
    Ok(LongestPathCensus {
        graph_id: g.id(),
        length: order - 1,
        count,
        truncated: count > listed.len() as u128,
        paths: listed.into_iter().map(Path::from_trusted).collect(),
        engine: Engine::Dfs,
        vertex_sets,
    })
}

/// The same census computed by the subset dynamic program (`n <= 20`).
pub fn longest_path_dp(g: &Graph, cap: Option<usize>) -> Result<LongestPathCensus> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    check_cap(cap)?;
    check_nonempty(g)?;
    let table = dp::DpTable::build(g)?;
    let count = undirected(table.count_directed(), table.order);
    let listed = table.smallest_paths(cap);
    Ok(LongestPathCensus {
        graph_id: g.id(),
        length: table.order - 1,
        count,
        truncated: count > listed.len() as u128,
        paths: listed.into_iter().map(Path::from_trusted).collect(),
        engine: Engine::Dp,
        vertex_sets: table.final_masks().into_iter().map(u64::from).collect(),
    })
}

pub fn census(g: &Graph, engine: Engine, cap: Option<usize>, budget: &Budget) -> Result<LongestPathCensus> {
    match engine {
        Engine::Dfs => longest_path_dfs_with(g, cap, budget),
        Engine::Dp => longest_path_dp(g, cap),
    }
}

pub fn has_hamiltonian_cycle(g: &Graph, budget: &Budget) -> Result<bool> {
    let bg = BitGraph::new(g, "hamiltonian cycle search")?;
    search::has_hamiltonian_cycle(&bg, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinIntersection {
    pub value: usize,
    /// Set when computed from a truncated listing: the true minimum may
    /// be smaller.
    pub upper_bound: bool,
}

/// Minimum of `|A ∩ B|` over unordered pairs of distinct sets, or the
/// set size when only one set exists (every pair of longest paths then
/// shares all vertices).
pub fn min_intersection_of_sets(sets: &[u64]) -> Option<usize> {
    match sets {
        [] => None,
        [only] => Some(only.count_ones() as usize),
        _ => {
            let mut best = u32::MAX;
            for (i, a) in sets.iter().enumerate() {
                for b in &sets[i + 1..] {
                    best = best.min((a & b).count_ones());
                }
            }
            Some(best as usize)
        }
    }
}

/// Minimum `|V(P) ∩ V(Q)|` over pairs of listed longest paths. Paths with
/// the same vertex set give the same intersections, so pairs are taken
/// over distinct vertex sets.
pub fn min_pairwise_intersection(
    census: &LongestPathCensus,
    allow_truncated: bool,
) -> Result<MinIntersection> {
    if census.truncated && !allow_truncated {
        return Err(Error::TruncatedCensus);
    }
    let sets: HashSet<u64> = census.paths.iter().map(Path::mask).collect();
    let sets: Vec<u64> = sets.into_iter().collect();
    let value = min_intersection_of_sets(&sets)
        .ok_or_else(|| Error::InvalidParameter("census lists no paths".into()))?;
    Ok(MinIntersection {
        value,
        upper_bound: census.truncated,
    })
}

/// Exact minimum intersection from the census' exhaustive vertex-set
/// family; valid even when the path listing is truncated.
pub fn min_pairwise_intersection_streaming(census: &LongestPathCensus) -> Result<MinIntersection> {
    let value = min_intersection_of_sets(&census.vertex_sets)
        .ok_or_else(|| Error::InvalidParameter("census has no vertex sets".into()))?;
    Ok(MinIntersection {
        value,
        upper_bound: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_ab(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|l| (a..a + b).map(move |r| (l, r)))).unwrap()
    }

    #[test]
    fn path_graph_is_its_own_longest_path() {
        let c = longest_path_dfs(&Graph::path(5), None).unwrap();
        assert_eq!((c.length, c.count), (4, 1));
        assert_eq!(c.paths[0].vertices(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn dp_examples() {
        let c = longest_path_dp(&Graph::cycle(5).unwrap(), None).unwrap();
        assert_eq!((c.length, c.count), (4, 5));
        let c = longest_path_dp(&Graph::complete(4), None).unwrap();
        assert_eq!((c.length, c.count), (3, 12));
        let star = Graph::new(5, (1..5).map(|i| (0, i))).unwrap();
        let c = longest_path_dp(&star, None).unwrap();
        assert_eq!((c.length, c.count), (2, 6));
    }

    #[test]
    fn k26_length_and_min_intersection() {
        let g = k_ab(2, 6);
        let c = longest_path_dfs(&g, None).unwrap();
        assert_eq!(c.length, 4);
        assert_eq!(min_pairwise_intersection(&c, false).unwrap().value, 2);
    }

    #[test]
    fn c5_min_intersection_is_five() {
        let c = longest_path_dfs(&Graph::cycle(5).unwrap(), None).unwrap();
        assert_eq!(min_pairwise_intersection(&c, false).unwrap().value, 5);
    }

    #[test]
    fn truncation_is_reported() {
        let c = longest_path_dfs(&Graph::complete(5), Some(7)).unwrap();
        assert_eq!(c.count, 60);
        assert!(c.truncated);
        assert_eq!(c.paths.len(), 7);
        assert_eq!(min_pairwise_intersection(&c, false), Err(Error::TruncatedCensus));
        let ub = min_pairwise_intersection(&c, true).unwrap();
        assert!(ub.upper_bound);
        assert_eq!(min_pairwise_intersection_streaming(&c).unwrap().value, 5);
    }

    #[test]
    fn truncated_listing_is_lexicographic_prefix() {
        let g = Graph::complete(5);
        let full = longest_path_dfs(&g, None).unwrap();
        let part = longest_path_dfs(&g, Some(10)).unwrap();
        assert_eq!(part.paths, full.paths[..10]);
        let dp = longest_path_dp(&g, Some(10)).unwrap();
        let a: Vec<_> = part.paths.iter().map(|p| p.vertices().to_vec()).collect();
        let b: Vec<_> = dp.paths.iter().map(|p| p.vertices().to_vec()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn edgeless_graph_census() {
        let c = longest_path_dfs(&Graph::empty(3), None).unwrap();
        assert_eq!((c.length, c.count), (0, 3));
        let d = longest_path_dp(&Graph::empty(3), None).unwrap();
        assert_eq!((d.length, d.count), (0, 3));
        assert_eq!(min_pairwise_intersection(&c, false).unwrap().value, 0);
    }

    #[test]
    fn errors() {
        assert!(matches!(longest_path_dfs(&Graph::path(3), Some(0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(longest_path_dfs(&Graph::empty(65), None), Err(Error::TooLarge { .. })));
        assert!(matches!(longest_path_dp(&Graph::empty(21), None), Err(Error::TooLarge { .. })));
        assert!(longest_path_dfs(&Graph::empty(0), None).is_err());
    }

    #[test]
    fn census_json_shape() {
        let c = longest_path_dfs(&Graph::path(3), None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["L"], 2);
        assert_eq!(v["count"], 1);
        assert_eq!(v["truncated"], false);
        assert_eq!(v["paths"], serde_json::json!([[0, 1, 2]]));
        assert_eq!(v["engine"], "dfs");
    }
}
