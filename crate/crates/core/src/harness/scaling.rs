//! Per-call query counts across graph sizes and a log-log slope fit.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{generate, GenKind};
use crate::graph::Edge;
use crate::harness::sweep::median_sorted;
use crate::oracle::lssg_answer;
use crate::params::{derive_params, ParamConfig};
use crate::randomness::{RandomSource, Seed};

#[derive(Debug, Clone, Serialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub seed: Seed,
    pub ell: usize,
    pub k: usize,
    pub q: f64,
    pub samples: usize,
    pub median: f64,
    pub max: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub generator: GenKind,
    pub delta: usize,
    /// One row per (size, seed).
    pub points: Vec<ScalingPoint>,
    /// `(n, median over all sampled calls at that size)`.
    pub medians: Vec<(usize, f64)>,
    pub slope: f64,
}

impl ScalingReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,seed,ell,k,q,samples,median,max\n");
        for p in &self.points {
            out.push_str(&format!("{},{},{},{},{},{},{},{}\n", p.n, p.seed, p.ell, p.k, p.q, p.samples, p.median, p.max));
        }
        out
    }
}

/// Ordinary least-squares slope of `y` on `x`.
pub fn ols_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// For every size and seed: generate the graph, sample `samples` edges
/// uniformly without replacement and record each call's query count.
pub fn scaling_report(
    generator: GenKind,
    delta: Option<usize>,
    sizes: &[usize],
    seeds: &[Seed],
    samples: usize,
    cfg: &ParamConfig,
) -> Result<ScalingReport> {
    let delta = delta.unwrap_or_else(|| generator.default_delta());
    let mut points = Vec::new();
    let mut medians = Vec::new();
    for &n in sizes {
        let mut pooled = Vec::new();
        for &seed in seeds {
            let g = generate(generator, n, Some(delta), seed.child("graph", n as u64))?;
            let src = RandomSource::new(seed);
            let params = derive_params(n, g.delta_max(), cfg, &src)?;
            let edges: Vec<Edge> = g.edges().collect();
            let mut rng = ChaCha8Rng::from_seed(*seed.child("sample", n as u64).as_bytes());
            let picked: Vec<Edge> = sample(&mut rng, edges.len(), samples.min(edges.len()))
                .into_iter()
                .map(|i| edges[i])
                .collect();
            let mut counts: Vec<u64> = picked
                .par_iter()
                .map(|e| lssg_answer(&g, &src, &params, e.lo, e.hi).map(|d| d.queries_used))
                .collect::<Result<_>>()?;
            counts.sort_unstable();
            points.push(ScalingPoint {
                n,
                seed,
                ell: params.ell,
                k: params.k,
                q: params.q,
                samples: counts.len(),
                median: median_sorted(&counts),
                max: *counts.last().unwrap_or(&0),
            });
            pooled.extend(counts);
        }
        pooled.sort_unstable();
        medians.push((n, median_sorted(&pooled)));
    }
    let logs: Vec<(f64, f64)> = medians.iter().map(|&(n, m)| ((n as f64).ln(), m.max(1.0).ln())).collect();
    Ok(ScalingReport {
        generator,
        delta,
        points,
        medians,
        slope: ols_slope(&logs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = [10.0f64, 100.0, 1000.0].iter().map(|&n| (n.ln(), (3.0 * n.powf(0.5)).ln())).collect();
        assert!((ols_slope(&pts) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn report_has_raw_points() {
        let r = scaling_report(GenKind::Cycle, None, &[32, 64], &[Seed::from_u64(1)], 10, &ParamConfig::default()).unwrap();
        assert_eq!(r.points.len(), 2);
        assert_eq!(r.medians.len(), 2);
        assert!(r.to_csv().lines().count() == 3);
    }
}
