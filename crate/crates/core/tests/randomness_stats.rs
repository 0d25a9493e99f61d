//! Frequencies of seed-derived draws match their target distributions within 5 sigma.

use std::collections::BTreeSet;

use lssg::{derive_params, ParamConfig, RandomSource, Seed};

const SIGMAS: f64 = 5.0;

fn within(observed: f64, mean: f64, sd: f64) -> bool {
    (observed - mean).abs() <= SIGMAS * sd
}

fn params(src: &RandomSource, q: f64, p: f64) -> lssg::Params {
    let cfg = ParamConfig {
        ell: Some(10),
        q: Some(q),
        p: Some(p),
        ..ParamConfig::default()
    };
    derive_params(100_000, 4, &cfg, src).unwrap()
}

#[test]
fn center_and_mark_frequencies() {
    let src = RandomSource::new(Seed::from_u64(2024));
    let trials = 100_000usize;
    for (q, p) in [(0.01, 0.3), (0.2, 0.05), (0.5, 0.5)] {
        let par = params(&src, q, p);
        let centers = (0..trials).filter(|&v| src.is_center(&par, v)).count() as f64;
        let marks = (0..trials).filter(|&v| src.is_marked(&par, v)).count() as f64;
        let t = trials as f64;
        assert!(within(centers, t * q, (t * q * (1.0 - q)).sqrt()), "q={q}: {centers}");
        assert!(within(marks, t * p, (t * p * (1.0 - p)).sqrt()), "p={p}: {marks}");
    }
}

#[test]
fn centers_and_marks_are_uncorrelated() {
    let src = RandomSource::new(Seed::from_u64(7));
    let par = params(&src, 0.5, 0.5);
    let t = 100_000usize;
    let both = (0..t).filter(|&v| src.is_center(&par, v) && src.is_marked(&par, v)).count() as f64;
    let expect = t as f64 * 0.25;
    assert!(within(both, expect, (expect * 0.75).sqrt()), "{both}");
}

#[test]
fn exponential_radii_have_mean_one_over_beta() {
    let src = RandomSource::new(Seed::from_u64(99));
    let par = params(&src, 0.0, 0.0);
    let t = 100_000usize;
    let draws: Vec<f64> = (0..t).map(|v| src.exp_radius(&par, v)).collect();
    assert!(draws.iter().all(|&r| r >= 0.0 && r.is_finite()));
    let mean = draws.iter().sum::<f64>() / t as f64;
    // Exp(beta) has mean and standard deviation 1 / beta.
    let sd = 1.0 / par.beta / (t as f64).sqrt();
    assert!(within(mean, 1.0 / par.beta, sd), "{mean} vs {}", 1.0 / par.beta);
    // Tail: P(r > 1/beta) = e^-1.
    let tail = draws.iter().filter(|&&r| r > 1.0 / par.beta).count() as f64;
    let pt = (-1.0f64).exp();
    assert!(within(tail, t as f64 * pt, (t as f64 * pt * (1.0 - pt)).sqrt()));
}

#[test]
fn ell_draws_are_uniform_across_the_range() {
    // n = 4096, eps = 1: range [24, 28].
    let cfg = ParamConfig::default().with_eps(1.0);
    let trials = 5000;
    let mut counts = [0usize; 5];
    for s in 0..trials {
        let p = derive_params(4096, 4, &cfg, &RandomSource::new(Seed::from_u64(s))).unwrap();
        counts[p.ell - 24] += 1;
    }
    let (t, pr) = (trials as f64, 0.2);
    for c in counts {
        assert!(within(c as f64, t * pr, (t * pr * (1.0 - pr)).sqrt()), "{counts:?}");
    }
}

#[test]
fn cell_ranks_are_a_total_order_independent_of_ids() {
    let src = RandomSource::new(Seed::from_u64(5));
    let ranks: Vec<_> = (0..10_000).map(|c| src.cell_rank(c)).collect();
    let distinct: BTreeSet<_> = ranks.iter().collect();
    assert_eq!(distinct.len(), ranks.len());
    // Rank order vs id order: about half of adjacent id pairs are inverted.
    let inversions = ranks.windows(2).filter(|w| w[0] > w[1]).count() as f64;
    let t = (ranks.len() - 1) as f64;
    assert!(within(inversions, t / 2.0, (t / 4.0).sqrt() * 2.0), "{inversions}");
}

#[test]
fn different_seeds_give_different_streams() {
    let a = RandomSource::new(Seed::from_u64(1));
    let b = RandomSource::new(Seed::from_u64(2));
    let same = (0..1000).filter(|&v| a.prf64("center", v) == b.prf64("center", v)).count();
    assert_eq!(same, 0);
}
