//! Directed P3-decomposition of digraphs.
//!
//! A digraph admits a P3-decomposition when its arcs can be partitioned into
//! directed paths of length two. The decision reduces to perfect matchings in
//! the line graph `L(D)`, whose vertices are arcs and whose edges join arcs that
//! chain head-to-tail. This crate builds `L(D)`, runs general and bipartite
//! matching engines on it, and turns matching failures back into certificates
//! phrased in terms of the original digraph (vertex partitions, Hall violators,
//! Tutte sets) that can be re-checked without trusting the engine.
//!
//! The [`oracle`] module carries brute-force ground truth for every
//! characterization at small scale.

pub mod decomposition;
pub mod digraph;
mod error;
pub mod euler;
pub mod format;
pub mod generate;
pub mod linegraph;
pub mod matching;
pub mod oracle;
pub mod rng;

pub use decomposition::{
    check_bipartite, check_fractional, check_tournament, decompose, kotzig_undirected,
    verify_certificate, verify_decomposition, Certificate, CheckReport, Decision,
    FractionalReport, P3Decomposition, P3Triple,
};
pub use digraph::{Arc, ArcId, Digraph, Partition3, VertexId, VertexSet};
pub use error::{Error, Result};
pub use linegraph::{build_line_graph, LineGraph, P3Policy};
pub use matching::{Matching, UGraph};
