//! End-to-end verification report for one (graph, seed, parameters) triple.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Edge, Graph, Vertex};
use crate::harness::lemmas::check_lemmas;
use crate::harness::metrics::{cell_stretch, check_connectivity, measure_stretch, StretchStats};
use crate::harness::reference::{reference_spanner, RefPartition};
use crate::harness::sweep::{sweep, QueryStats, SweepOptions};
use crate::params::{ParamConfig, Params};
use crate::randomness::RandomSource;

pub const SCHEMA_VERSION: u32 = 1;

/// Mismatching edges listed in a report before truncation.
const MAX_LISTED_MISMATCHES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SpannerReport {
    pub schema_version: u32,
    pub seed: String,
    pub config: ParamConfig,
    pub params: Params,
    pub n: usize,
    pub m: usize,
    /// Edges the oracle accepted.
    pub edges: usize,
    pub edges_per_vertex: f64,
    pub connected: bool,
    /// Number of clusters `s`.
    pub clusters: usize,
    /// Realized number of centers `|S|`.
    pub centers: usize,
    pub remote: usize,
    pub boundary_edges: usize,
    pub stretch: StretchStats,
    /// `None` when a contracted edge is disconnected.
    pub cell_stretch: Option<usize>,
    pub en_radius_violation: bool,
    pub queries: QueryStats,
    pub mismatches: Vec<Edge>,
    pub lemma_checks: BTreeMap<String, bool>,
}

impl SpannerReport {
    pub fn all_pass(&self) -> bool {
        self.lemma_checks.values().all(|&b| b)
    }
}

/// Contraction map for the cell-level check: every vertex maps to its center,
/// remote vertices to themselves.
pub fn cell_map(part: &RefPartition) -> Vec<Vertex> {
    part.center_of.iter().enumerate().map(|(v, c)| c.unwrap_or(v)).collect()
}

pub fn build_report(g: &Graph, src: &RandomSource, params: &Params, cfg: &ParamConfig, opts: SweepOptions) -> Result<SpannerReport> {
    let reference = reference_spanner(g, src, params);
    let swept = sweep(g, src, params, opts)?;
    let h = &swept.edges;
    let all_mismatches: Vec<Edge> = reference.edges.symmetric_difference(h).copied().collect();
    let connected = check_connectivity(g, h);
    let stretch = measure_stretch(g, h);
    let cells = cell_stretch(g, h, &cell_map(&reference.partition));

    let mut lemma_checks = check_lemmas(g, params, &reference);
    lemma_checks.insert("oracle_equals_reference".into(), all_mismatches.is_empty());
    lemma_checks.insert("connected".into(), connected);
    lemma_checks.insert("stretch_finite".into(), stretch.all_finite());

    Ok(SpannerReport {
        schema_version: SCHEMA_VERSION,
        seed: src.seed().to_string(),
        config: cfg.clone(),
        params: params.clone(),
        n: g.n(),
        m: g.m(),
        edges: h.len(),
        edges_per_vertex: h.len() as f64 / g.n() as f64,
        connected,
        clusters: reference.partition.clusters.len(),
        centers: reference.partition.centers.len(),
        remote: reference.partition.remote_count(),
        boundary_edges: reference.parts.boundary.len(),
        stretch,
        cell_stretch: cells,
        en_radius_violation: reference.en_radius_violation,
        queries: swept.stats,
        mismatches: all_mismatches.into_iter().take(MAX_LISTED_MISMATCHES).collect(),
        lemma_checks,
    })
}
