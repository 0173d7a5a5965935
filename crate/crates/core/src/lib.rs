//! Exact laboratory for longest-path intersections in `k`-connected graphs.
//!
//! The crate measures longest paths exactly (two independent engines),
//! computes vertex connectivity and disjoint-path fans by max-flow,
//! implements the path surgeries used to reason about pairs of longest
//! paths, generates the tight graph families, and checks every known
//! lower bound on the intersection of two longest paths.

pub mod bounds;
pub mod budget;
pub mod claims;
pub mod connectivity;
pub mod error;
pub mod families;
pub mod graph;
pub mod longest;
pub mod path;

pub use bounds::{evaluate, evaluate_with, BoundReport, EvaluateOptions};
pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Graph, GraphId, Vertex};
pub use path::Path;
