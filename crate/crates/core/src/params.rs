//! Derived algorithm parameters.

use serde::{Deserialize, Serialize};

use crate::error::{LssgError, Result};
use crate::randomness::RandomSource;

/// User-facing knobs: sparsity target, formula constants and explicit overrides.
///
/// The asymptotic formulas degenerate at desk scale (the cluster threshold
/// exceeds `n` long before the promise can hold), so `ell`, `k`, `q` and `p`
/// can be pinned directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamConfig {
    pub eps: f64,
    pub c_k: f64,
    pub c_s: f64,
    pub c_delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

impl Default for ParamConfig {
    fn default() -> Self {
        ParamConfig {
            eps: 0.5,
            c_k: 1.0,
            c_s: 1.0,
            c_delta: 1.0,
            ell: None,
            k: None,
            q: None,
            p: None,
        }
    }
}

impl ParamConfig {
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_overrides(mut self, ell: Option<usize>, k: Option<usize>, q: Option<f64>, p: Option<f64>) -> Self {
        self.ell = ell;
        self.k = k;
        self.q = q;
        self.p = p;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub delta_max: usize,
    pub eps: f64,
    pub c_k: f64,
    pub c_s: f64,
    pub c_delta: f64,
    /// Inclusive range the hop radius is drawn from.
    pub ell_range: (usize, usize),
    /// Hop radius for center search; also the EN horizon `h`.
    pub ell: usize,
    /// Cluster size threshold.
    pub k: usize,
    /// Per-vertex center probability.
    pub q: f64,
    /// Per-center marking probability.
    pub p: f64,
    pub delta: f64,
    pub h: usize,
    pub beta: f64,
    /// `k > n`: the promise regime is unreachable and every cell is a single cluster.
    pub promise_infeasible: bool,
}

/// `ceil` that ignores floating-point noise just above an integer.
fn ceil_tol(x: f64) -> f64 {
    (x - 1e-9 * x.abs().max(1.0)).ceil()
}

fn to_usize_saturating(x: f64) -> usize {
    if x >= usize::MAX as f64 {
        usize::MAX
    } else {
        x as usize
    }
}

/// Lower end `ceil(2 ln n / ln(1 + eps))` of the hop-radius range.
pub fn ell_lower(n: usize, eps: f64) -> usize {
    to_usize_saturating(ceil_tol(2.0 * (n as f64).ln() / (1.0 + eps).ln()))
}

pub fn derive_params(n: usize, delta_max: usize, cfg: &ParamConfig, src: &RandomSource) -> Result<Params> {
    if n < 2 {
        return Err(LssgError::InvalidParams(format!("need n >= 2, got {n}")));
    }
    if delta_max < 2 {
        return Err(LssgError::InvalidParams(format!("need delta_max >= 2, got {delta_max}")));
    }
    if !(cfg.eps > 0.0 && cfg.eps.is_finite()) {
        return Err(LssgError::InvalidParams(format!("eps must be positive, got {}", cfg.eps)));
    }
    if !(cfg.c_delta >= 1.0) {
        return Err(LssgError::InvalidParams(format!("c_delta must be >= 1, got {}", cfg.c_delta)));
    }
    if !(cfg.c_k > 0.0 && cfg.c_s > 0.0) {
        return Err(LssgError::InvalidParams("c_k and c_s must be positive".into()));
    }
    for (name, prob) in [("q", cfg.q), ("p", cfg.p)] {
        if let Some(x) = prob {
            if !(0.0..=1.0).contains(&x) {
                return Err(LssgError::InvalidParams(format!("{name} must lie in [0, 1], got {x}")));
            }
        }
    }
    if cfg.k == Some(0) {
        return Err(LssgError::InvalidParams("k must be at least 1".into()));
    }

    let nf = n as f64;
    let ln_n = nf.ln();
    let cbrt_n = nf.cbrt();
    let lo = ell_lower(n, cfg.eps);
    let hi = lo.saturating_add(to_usize_saturating(ceil_tol(delta_max as f64 / cfg.eps)));
    let ell = src
        .fixture_ell()
        .or(cfg.ell)
        .unwrap_or_else(|| src.draw_ell(lo, hi));
    if ell == 0 {
        return Err(LssgError::InvalidParams("ell must be at least 1".into()));
    }

    let k = cfg.k.unwrap_or_else(|| {
        to_usize_saturating(ceil_tol(cfg.c_k * cbrt_n * ln_n * ell as f64 * delta_max as f64 / cfg.eps))
    });
    let q = cfg.q.unwrap_or_else(|| (cfg.c_s * cfg.eps / (cbrt_n * ln_n)).min(1.0));
    let p = cfg.p.unwrap_or(1.0 / cbrt_n);
    let delta = nf.powf(-cfg.c_delta);
    let h = ell;
    let beta = (nf / delta).ln() / h as f64;

    Ok(Params {
        n,
        delta_max,
        eps: cfg.eps,
        c_k: cfg.c_k,
        c_s: cfg.c_s,
        c_delta: cfg.c_delta,
        ell_range: (lo, hi),
        ell,
        k,
        q,
        p,
        delta,
        h,
        beta,
        promise_infeasible: k > n,
    })
}
