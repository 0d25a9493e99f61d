use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised while reading or validating a graph file.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: vertex {vertex} exceeds degree bound {delta_max}")]
    DegreeBound {
        line: usize,
        vertex: Vertex,
        delta_max: usize,
    },
    #[error("line {line}: edge list not strictly ascending by edge rank (duplicate or out of order)")]
    Unsorted { line: usize },
    #[error("adjacency of {u} and {v} is not symmetric")]
    Asymmetric { u: Vertex, v: Vertex },
    #[error("invalid graph: {0}")]
    Invalid(String),
}

#[derive(Debug, Error)]
pub enum LssgError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// An internal structural guarantee failed. This is a bug, never an input condition.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error("seed selection exhausted after {attempts} attempts; best seed {best_seed} had {best_edges} edges (budget {budget:.1})")]
    WrapperExhausted {
        attempts: usize,
        best_seed: String,
        best_edges: usize,
        budget: f64,
    },
}

pub type Result<T, E = LssgError> = std::result::Result<T, E>;
