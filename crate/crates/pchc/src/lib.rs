//! Proper Hamiltonian cycles in edge-colored multigraphs.
//!
//! An edge-colored multigraph allows parallel edges between a vertex pair as
//! long as their colors differ. A subgraph is *proper* if no two adjacent
//! edges share a color; a proper Hamiltonian cycle visits every vertex once
//! with that constraint. This crate provides:
//!
//! - [`graph`]: the immutable multigraph model, degree queries, complement,
//!   color merging and vertex contraction, plus machine-checkable cycle and
//!   path certificates.
//! - [`solver`]: an exhaustive backtracking search for proper Hamiltonian
//!   structures with budget control, usable as an oracle at desk scale.
//! - [`constructive`]: certificate-producing solvers that follow sufficient
//!   edge-count and rainbow-degree conditions, falling back on the exact
//!   solver only for base cases and cited degree conditions.
//! - [`extremal`]: deterministic generators for the tight families one edge
//!   below each threshold.
//! - [`harness`]: seeded corpus generation, oracle cross-checks, tightness
//!   sweeps, and branch-coverage accounting.
//! - [`io`]: canonical JSON serialization and Graphviz DOT export.

pub mod constructive;
pub mod extremal;
pub mod graph;
pub mod harness;
pub mod io;
pub mod solver;

pub use graph::{
    Color, ColoredMultigraph, Contraction, ContractionRule, CycleCertificate, GraphError,
    MergeRecord, NeighborSource, PathCertificate, SimpleGraph, Vertex,
};
pub use solver::{Budget, Certificate, SearchConstraints, SolveOutcome, SolveStatus};
