//! Order and execution independence of the oracle's answers.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::harness::sweep::{sweep, Order, SweepOptions};
use crate::oracle::lssg_answer;
use crate::params::Params;
use crate::randomness::{RandomSource, Seed};

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub permutations: usize,
    pub permutations_identical: bool,
    pub parallel_identical: bool,
    pub repeated_identical: bool,
    /// Edges whose answer differed in some run.
    pub unstable: BTreeSet<Edge>,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.permutations_identical && self.parallel_identical && self.repeated_identical
    }
}

/// Compares a serial rank-order sweep against `trials` shuffled sweeps, a
/// parallel sweep, and an interleaved run where every edge is asked twice.
pub fn consistency_check(g: &Graph, src: &RandomSource, params: &Params, trials: usize, order_seed: Seed) -> Result<ConsistencyReport> {
    let base = sweep(g, src, params, SweepOptions::default())?.edges;
    let mut unstable = BTreeSet::new();
    let mut diff = |other: &BTreeSet<Edge>| -> bool {
        let d: Vec<Edge> = base.symmetric_difference(other).copied().collect();
        let same = d.is_empty();
        unstable.extend(d);
        same
    };

    let mut permutations_identical = true;
    for t in 0..trials {
        let opts = SweepOptions {
            order: Order::Shuffled(order_seed.child("permutation", t as u64)),
            jobs: None,
        };
        permutations_identical &= diff(&sweep(g, src, params, opts)?.edges);
    }

    let par = SweepOptions {
        order: Order::Shuffled(order_seed.child("parallel", 0)),
        jobs: Some(0),
    };
    let parallel_identical = diff(&sweep(g, src, params, par)?.edges);

    let mut doubled: Vec<Edge> = g.edges().chain(g.edges()).collect();
    doubled.shuffle(&mut ChaCha8Rng::from_seed(*order_seed.child("repeat", 0).as_bytes()));
    let mut repeated_identical = true;
    for e in doubled {
        let ans = lssg_answer(g, src, params, e.lo, e.hi)?.answer;
        if ans != base.contains(&e) {
            repeated_identical = false;
            unstable.insert(e);
        }
    }

    Ok(ConsistencyReport {
        permutations: trials,
        permutations_identical,
        parallel_identical,
        repeated_identical,
        unstable,
    })
}
