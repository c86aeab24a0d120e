//! Turán-type independent set bounds and the one-round randomized rules that
//! attain them.
//!
//! The crate is split into:
//!
//! * [`graph`]: immutable graphs, instance generators, the edge-list format
//!   and an exact branch-and-bound oracle for small instances.
//! * [`bounds`]: Turán and Caro-Wei bounds, the weighted neighbourhood bound,
//!   every performance-ratio formula and the numeric `rho(delta)` minimisation.
//! * [`algorithms`]: random ranks, the local-maximum rule (unweighted and
//!   weight-tilted), the two-round extension, greedy baselines and a seeded
//!   Monte Carlo harness.
//! * [`distsim`]: the same rules executed as a one-round broadcast simulation
//!   and as a single-pass edge stream / preemptive online session.
//! * [`experiment`]: generator specs, tight-family experiments and the report
//!   types shared with the command-line tool.

pub mod algorithms;
pub mod bounds;
pub mod distsim;
mod error;
pub mod experiment;
pub mod graph;

pub use algorithms::{
    Algorithm, MonteCarloEstimate, RankAssignment, RankMode, RunResult,
};
pub use bounds::{BoundReport, RatioTable, RhoResult};
pub use error::{Error, Result};
pub use graph::{DegreeProfile, Graph, VertexSet, WeightedGraph};

/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
