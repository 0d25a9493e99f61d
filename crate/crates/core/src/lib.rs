//! Local sparse spanning graph (LSSG) oracle for bounded-degree graphs.
//!
//! Given incidence-list access to a graph `G` and a shared random seed, the
//! oracle answers, for any edge `{u, v}`, whether the edge belongs to a sparse
//! connected spanning subgraph `H`. Each answer is computed from a bounded
//! neighborhood of the edge, and all answers for one seed agree with a single
//! global `H`.
//!
//! The crate is layered as follows:
//!
//! * [`graph`], [`probe`]: the graph, the query counter and cached probing.
//! * [`randomness`], [`params`]: seed-derived randomness and derived parameters.
//! * [`partition`]: Voronoi cells, BFS trees and clusters, computed locally.
//! * [`connectors`]: the inter-cluster edge rules.
//! * [`remote`]: the exponential-shift spanner on vertices far from all centers.
//! * [`oracle`]: per-edge dispatch with decision traces.
//! * [`harness`]: a global reference construction and verification tooling.

pub mod connectors;
pub mod error;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod params;
pub mod partition;
pub mod probe;
pub mod randomness;
pub mod remote;

pub use error::{GraphError, LssgError, Result};
pub use generate::{generate, GenKind};
pub use graph::{Edge, Graph, QueryCounter, Vertex};
pub use oracle::{explain, lssg_answer, Branch, Oracle, OracleDecision};
pub use params::{derive_params, ParamConfig, Params};
pub use randomness::{Fixture, RandomSource, Seed};
