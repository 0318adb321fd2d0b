//! Temporal edge cover and temporal matching on temporal graphs.

pub mod approx;
pub mod dp;
pub mod error;
pub mod exact;
pub mod format;
pub mod generate;
pub mod graph;
pub mod reductions;
pub mod solution;
pub mod solver;
pub mod static_alg;
pub mod treedec;

pub use error::{Error, Result};
pub use format::{parse_solution, parse_temporal_graph, serialize_solution, serialize_temporal_graph};
pub use graph::{Edge, Labels, StaticGraph, TemporalGraph, TemporalVertex, Time, Vertex};
pub use solution::{verify_edge_cover, verify_matching, CoverReport, MatchingReport, SolutionKind, SolutionSet};
