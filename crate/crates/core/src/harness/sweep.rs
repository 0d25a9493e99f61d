//! Evaluating the oracle on every edge of a graph.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LssgError, Result};
use crate::graph::{Edge, Graph};
use crate::oracle::{lssg_answer, Branch};
use crate::params::Params;
use crate::randomness::{RandomSource, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Edge rank order.
    Rank,
    /// A permutation drawn from the given seed.
    Shuffled(Seed),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub order: Order,
    /// `None` runs serially on the calling thread; `Some(0)` uses rayon's default pool.
    pub jobs: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { order: Order::Rank, jobs: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct QueryStats {
    pub calls: usize,
    pub min: u64,
    pub median: f64,
    pub max: u64,
    pub total: u64,
    pub mean: f64,
}

impl QueryStats {
    pub fn from_counts(counts: &[u64]) -> QueryStats {
        if counts.is_empty() {
            return QueryStats::default();
        }
        let mut sorted = counts.to_vec();
        sorted.sort_unstable();
        let total: u64 = sorted.iter().sum();
        QueryStats {
            calls: sorted.len(),
            min: sorted[0],
            median: median_sorted(&sorted),
            max: *sorted.last().unwrap(),
            total,
            mean: total as f64 / sorted.len() as f64,
        }
    }
}

pub fn median_sorted(sorted: &[u64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub edge: Edge,
    pub answer: bool,
    pub branch: Branch,
    pub queries: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub edges: BTreeSet<Edge>,
    /// One record per edge of the graph, in rank order.
    pub records: Vec<SweepRecord>,
    pub stats: QueryStats,
}

pub fn sweep(g: &Graph, src: &RandomSource, params: &Params, opts: SweepOptions) -> Result<SweepResult> {
    let mut order: Vec<Edge> = g.edges().collect();
    if let Order::Shuffled(seed) = opts.order {
        order.shuffle(&mut ChaCha8Rng::from_seed(*seed.as_bytes()));
    }
    let eval = |e: &Edge| {
        lssg_answer(g, src, params, e.lo, e.hi).map(|d| SweepRecord {
            edge: d.edge,
            answer: d.answer,
            branch: d.branch,
            queries: d.queries_used,
        })
    };
    let mut records: Vec<SweepRecord> = match opts.jobs {
        None => order.iter().map(eval).collect::<Result<_>>()?,
        Some(0) => order.par_iter().map(eval).collect::<Result<_>>()?,
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| LssgError::InvalidInput(format!("thread pool: {e}")))?
            .install(|| order.par_iter().map(eval).collect::<Result<_>>())?,
    };
    records.sort_unstable_by_key(|r| r.edge);
    let edges = records.iter().filter(|r| r.answer).map(|r| r.edge).collect();
    let counts: Vec<u64> = records.iter().map(|r| r.queries).collect();
    Ok(SweepResult {
        edges,
        stats: QueryStats::from_counts(&counts),
        records,
    })
}
