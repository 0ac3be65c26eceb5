//! Search for mixed radial Moore graphs of radius 2 with minimum status.
//!
//! A mixed graph has both undirected edges and directed arcs. For degrees
//! `(r, z)` (undirected degree `r`, in- and out-degree `z`) and radius `k`,
//! the Moore bound `M(r, z, k)` caps the order of any mixed graph with those
//! degrees and diameter `k`. A *mixed radial Moore graph* keeps the order
//! `M(r, z, k)` and total regularity but relaxes the diameter to `k + 1`,
//! requiring radius exactly `k`. The *status* of a graph (the sum of all
//! pairwise directed distances) ranks such graphs: the smaller the status,
//! the closer the graph is to a hypothetical mixed Moore graph.
//!
//! This crate provides, for `k = 2`:
//!
//! - [`graph`]: mixed-graph representation, distances, eccentricities,
//!   status, and a canonical text format;
//! - [`moore`]: Moore bounds, Moore status constants, the canonical Moore
//!   tree, and the status 1-norm;
//! - [`model`]: the full binary integer-programming model over adjacency
//!   indicators, solver-agnostic;
//! - [`lp`]: LP-format export of that model and solution-file import;
//! - [`exact`]: built-in exact branch-and-bound over typed adjacency slots;
//! - [`heuristic`]: swap-based local search for instances beyond exact reach;
//! - [`verify`]: classification of candidates (Moore / radial Moore / neither);
//! - [`catalog`]: an on-disk index of best graphs found;
//! - [`reference`]: embedded best-known results for small `(r, z)`.
//!
//! The `rmoore` binary exposes all of this as subcommands; the `examples/`
//! directory has one runnable example per capability.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod graph;
pub mod heuristic;
pub mod lp;
pub mod model;
pub mod moore;
pub mod reference;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{solve_exact, SearchReport, SolveOptions};
pub use graph::{DegreeProfile, DistanceMatrix, EccentricityProfile, MixedGraph, StatusVector};
pub use heuristic::{solve_heuristic, HeuristicConfig};
pub use model::{build_model, IpModel, VarName};
pub use moore::{moore_bound, moore_profile, moore_tree, status_norm1, MooreProfile, MooreTree};
pub use verify::{verify, Classification, VerificationReport};
