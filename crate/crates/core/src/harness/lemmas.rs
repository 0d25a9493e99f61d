//! Deterministic per-seed checks and seed-averaged statistical checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::harness::metrics::bridges;
use crate::harness::reference::{reference_partition, reference_spanner, ReferenceSpanner};
use crate::params::{derive_params, ParamConfig, Params};
use crate::randomness::{RandomSource, Seed};

/// Slack applied to expectation bounds in seed-averaged checks.
pub const EXPECTATION_SLACK: f64 = 2.0;
/// Slack applied to the exponential-shift size bound.
pub const EN_SIZE_SLACK: f64 = 1.5;

/// `|S| + n * ell * (delta + 1) / k`.
pub fn cluster_count_bound(n: usize, centers: usize, params: &Params) -> f64 {
    centers as f64 + n as f64 * params.ell as f64 * (params.delta_max as f64 + 1.0) / params.k as f64
}

/// `(n / delta)^(1 / h)`.
pub fn en_size_bound(params: &Params) -> f64 {
    (params.n as f64 / params.delta).powf(1.0 / params.h as f64)
}

/// Named pass/fail checks that must hold for every graph and seed.
pub fn check_lemmas(g: &Graph, params: &Params, reference: &ReferenceSpanner) -> BTreeMap<String, bool> {
    let part = &reference.partition;
    let mut out = BTreeMap::new();
    let s = part.clusters.len() as f64;
    out.insert(
        "cluster_count_bound".to_string(),
        s <= cluster_count_bound(g.n(), part.centers.len(), params),
    );
    out.insert("subgraph".to_string(), reference.edges.iter().all(|e| g.has_edge(e.lo, e.hi)));
    out.insert("bridges_kept".to_string(), bridges(g).iter().all(|e| reference.contains(*e)));
    out.insert("tree_edges_kept".to_string(), reference.parts.tree.iter().all(|e| reference.contains(*e)));
    out.insert(
        "depth_within_ell".to_string(),
        part.dist.iter().flatten().all(|&d| d <= params.ell),
    );
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MeanCheck {
    pub name: String,
    pub samples: usize,
    pub mean: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Mean `|E(R, R-bar)|` over independent seeds (each drawing its own `ell`),
/// checked against `EXPECTATION_SLACK * eps * n`.
pub fn boundary_expectation(g: &Graph, cfg: &ParamConfig, seeds: &[Seed]) -> Result<MeanCheck> {
    let mut total = 0usize;
    for &seed in seeds {
        let src = RandomSource::new(seed);
        let params = derive_params(g.n(), g.delta_max(), cfg, &src)?;
        let part = reference_partition(g, &src, &params);
        total += g.edges().filter(|e| part.is_remote(e.lo) != part.is_remote(e.hi)).count();
    }
    let mean = total as f64 / seeds.len() as f64;
    let bound = EXPECTATION_SLACK * cfg.eps * g.n() as f64;
    Ok(MeanCheck {
        name: "boundary_expectation".into(),
        samples: seeds.len(),
        mean,
        bound,
        pass: mean <= bound,
    })
}

/// Mean `|E'| / n` with no centers at all, against `EN_SIZE_SLACK * (n/delta)^(1/h)`.
///
/// `cfg.q` is forced to 0. Each seed draws its own `ell`, hence its own `h`,
/// so the bound is the slack times the mean of the per-seed bounds.
pub fn en_only_size(g: &Graph, cfg: &ParamConfig, seeds: &[Seed]) -> Result<(MeanCheck, Vec<ReferenceSpanner>)> {
    let cfg = ParamConfig { q: Some(0.0), ..cfg.clone() };
    let mut ratios = Vec::new();
    let mut spanners = Vec::new();
    let mut bound = 0.0;
    for &seed in seeds {
        let src = RandomSource::new(seed);
        let params = derive_params(g.n(), g.delta_max(), &cfg, &src)?;
        bound += EN_SIZE_SLACK * en_size_bound(&params) / seeds.len() as f64;
        let r = reference_spanner(g, &src, &params);
        ratios.push(r.len() as f64 / g.n() as f64);
        spanners.push(r);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Ok((
        MeanCheck {
            name: "en_only_size".into(),
            samples: seeds.len(),
            mean,
            bound,
            pass: mean <= bound,
        },
        spanners,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenKind};

    #[test]
    fn cluster_bound_formula() {
        let src = RandomSource::new(Seed::from_u64(0));
        let cfg = ParamConfig {
            ell: Some(3),
            k: Some(4),
            ..ParamConfig::default()
        };
        let p = derive_params(100, 3, &cfg, &src).unwrap();
        assert_eq!(cluster_count_bound(100, 7, &p), 7.0 + 100.0 * 3.0 * 4.0 / 4.0);
    }

    #[test]
    fn lemmas_hold_on_a_grid() {
        let g = generate(GenKind::Grid, 64, None, Seed::from_u64(0)).unwrap();
        let cfg = ParamConfig {
            ell: Some(3),
            k: Some(4),
            q: Some(0.15),
            p: Some(0.3),
            ..ParamConfig::default()
        };
        for s in 0..5 {
            let src = RandomSource::new(Seed::from_u64(s));
            let p = derive_params(64, 4, &cfg, &src).unwrap();
            let r = reference_spanner(&g, &src, &p);
            let checks = check_lemmas(&g, &p, &r);
            assert!(checks.values().all(|&b| b), "{checks:?}");
        }
    }
}
