//! Restart wrapper: retry fresh seeds until the global edge count is within budget.

use serde::Serialize;

use crate::error::{LssgError, Result};
use crate::graph::Graph;
use crate::harness::reference::{reference_spanner, ReferenceSpanner};
use crate::params::{derive_params, ParamConfig, Params};
use crate::randomness::{RandomSource, Seed};

pub const DEFAULT_BUDGET_FACTOR: f64 = 2.0;

/// `ceil(4 log2 n)`.
pub fn default_max_attempts(n: usize) -> usize {
    ((4.0 * (n as f64).log2()).ceil() as usize).max(1)
}

#[derive(Debug, Clone, Serialize)]
pub struct WrapperAttempt {
    pub seed: Seed,
    pub edges: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WrapperOutcome {
    pub seed: Seed,
    /// 1-based index of the accepted attempt.
    pub attempts: usize,
    pub budget: f64,
    pub history: Vec<WrapperAttempt>,
    pub params: Params,
    #[serde(skip)]
    pub reference: ReferenceSpanner,
}

/// Attempt `i` uses `base.child("wrapper", i)`. The first seed whose reference
/// spanner has at most `budget_factor * (1 + eps) * n` edges is accepted.
pub fn wrapper_select_seed(
    g: &Graph,
    cfg: &ParamConfig,
    base: Seed,
    budget_factor: f64,
    max_attempts: Option<usize>,
) -> Result<WrapperOutcome> {
    let max_attempts = max_attempts.unwrap_or_else(|| default_max_attempts(g.n()));
    if max_attempts == 0 {
        return Err(LssgError::InvalidInput("max_attempts must be at least 1".into()));
    }
    let budget = budget_factor * (1.0 + cfg.eps) * g.n() as f64;
    let mut history = Vec::new();
    for i in 0..max_attempts {
        let seed = base.child("wrapper", i as u64);
        let src = RandomSource::new(seed);
        let params = derive_params(g.n(), g.delta_max(), cfg, &src)?;
        let reference = reference_spanner(g, &src, &params);
        history.push(WrapperAttempt {
            seed,
            edges: reference.len(),
        });
        if reference.len() as f64 <= budget {
            return Ok(WrapperOutcome {
                seed,
                attempts: i + 1,
                budget,
                history,
                params,
                reference,
            });
        }
    }
    let best = history.iter().min_by_key(|a| a.edges).unwrap();
    Err(LssgError::WrapperExhausted {
        attempts: max_attempts,
        best_seed: best.seed.to_string(),
        best_edges: best.edges,
        budget,
    })
}
