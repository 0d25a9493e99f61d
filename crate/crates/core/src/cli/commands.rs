use std::fs;
use std::io::Write;
use std::path::Path;

use lssg::harness::{build_report, scaling_report, sweep as run_sweep, Order, SweepOptions};
use lssg::oracle::render;
use lssg::{derive_params, generate, lssg_answer, Fixture, Graph, LssgError, ParamConfig, Params, RandomSource};

use super::{AnswerArgs, BenchArgs, Format, GenArgs, RunArgs, SweepArgs, VerifyArgs};

pub enum Failure {
    /// Named checks that did not pass.
    Checks(Vec<String>),
    Error(LssgError),
}

impl<E: Into<LssgError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), LssgError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| LssgError::InvalidInput(format!("writing {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| LssgError::InvalidInput(format!("writing stdout: {e}")))
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

struct Setup {
    graph: Graph,
    src: RandomSource,
    cfg: ParamConfig,
    params: Params,
}

fn setup(run: &RunArgs) -> Result<Setup, LssgError> {
    let graph = match (&run.graph, run.gen) {
        (Some(path), _) => Graph::load(path)?,
        (None, Some(kind)) => generate(kind, run.n.unwrap_or(0), run.delta_max, run.gen_seed.unwrap_or(run.seed))?,
        (None, None) => return Err(LssgError::InvalidInput("one of --graph or --gen is required".into())),
    };
    let src = match &run.fixture {
        Some(path) => RandomSource::with_fixture(run.seed, Fixture::load(path)?),
        None => RandomSource::new(run.seed),
    };
    let cfg = ParamConfig {
        eps: run.eps,
        c_k: run.c_k,
        c_s: run.c_s,
        c_delta: run.c_delta,
        ell: run.ell,
        k: run.k,
        q: run.q,
        p: run.p,
    };
    let params = derive_params(graph.n(), graph.delta_max(), &cfg, &src)?;
    Ok(Setup { graph, src, cfg, params })
}

pub fn gen(a: GenArgs) -> CmdResult {
    let g = generate(a.kind, a.n, a.delta_max, a.seed)?;
    emit(a.out.as_deref(), &g.to_canonical_string())?;
    Ok(())
}

pub fn answer(a: AnswerArgs) -> CmdResult {
    let s = setup(&a.run)?;
    let d = lssg_answer(&s.graph, &s.src, &s.params, a.u, a.v)?;
    let text = if a.explain { render(&d) } else { json(&d) };
    emit(a.out.as_deref(), &text)?;
    Ok(())
}

pub fn sweep(a: SweepArgs) -> CmdResult {
    let s = setup(&a.run)?;
    let opts = SweepOptions {
        order: Order::Rank,
        jobs: a.jobs,
    };
    let result = run_sweep(&s.graph, &s.src, &s.params, opts)?;
    let edges: Vec<_> = result.edges.iter().copied().collect();
    let kept = Graph::from_edges(s.graph.n(), s.graph.delta_max(), &edges)?;
    emit(Some(&a.out), &kept.to_canonical_string())?;
    let stats = serde_json::json!({
        "schema_version": lssg::harness::report::SCHEMA_VERSION,
        "seed": s.src.seed().to_string(),
        "config": s.cfg,
        "params": s.params,
        "edges": result.edges.len(),
        "queries": result.stats,
    });
    emit(a.stats.as_deref(), &json(&stats))?;
    Ok(())
}

pub fn verify(a: VerifyArgs) -> CmdResult {
    let s = setup(&a.run)?;
    let opts = SweepOptions {
        order: Order::Rank,
        jobs: a.jobs,
    };
    let report = build_report(&s.graph, &s.src, &s.params, &s.cfg, opts)?;
    let text = match a.format {
        Format::Json => json(&report),
        Format::Csv => report.stretch.histogram_csv(),
    };
    emit(a.out.as_deref(), &text)?;
    let failed: Vec<String> = report
        .lemma_checks
        .iter()
        .filter(|(_, &ok)| !ok)
        .map(|(name, _)| name.clone())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}

pub fn bench(a: BenchArgs) -> CmdResult {
    let cfg = ParamConfig {
        ell: a.ell,
        k: a.k,
        q: a.q,
        p: a.p,
        ..ParamConfig::default().with_eps(a.eps)
    };
    let seeds: Vec<_> = (0..a.seeds as u64).map(|i| a.seed.child("bench", i)).collect();
    let report = scaling_report(a.kind, a.delta_max, &a.sizes, &seeds, a.samples, &cfg)?;
    let text = match a.format {
        Format::Json => json(&report),
        Format::Csv => format!("{}# slope,{}\n", report.to_csv(), report.slope),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(())
}
