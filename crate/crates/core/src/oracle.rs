//! Stateless per-edge membership oracle.
//!
//! [`lssg_answer`] decides whether an edge belongs to the sparse spanning
//! subgraph using only probes around the edge and the shared randomness. Each
//! call builds a fresh [`Local`] context, so answers never depend on earlier
//! calls.

use std::fmt::Write as _;

use serde::Serialize;

use crate::connectors::{rule_marked, rule_no_marked_neighbor, IndirectCandidate};
use crate::error::{LssgError, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::params::Params;
use crate::partition::{CenterInfo, Cluster, ClusterKind, Local};
use crate::randomness::RandomSource;
use crate::remote::boundary_answer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    En,
    Boundary,
    BfsTree,
    RuleA,
    RuleB,
    RuleC,
    None,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::En => "en",
            Branch::Boundary => "boundary",
            Branch::BfsTree => "bfs-tree",
            Branch::RuleA => "rule-a",
            Branch::RuleB => "rule-b",
            Branch::RuleC => "rule-c",
            Branch::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterSummary {
    pub center: Vertex,
    pub root: Vertex,
    pub kind: ClusterKind,
    pub marked: bool,
    pub size: usize,
    pub members: Vec<Vertex>,
    pub adjacent_cells: Vec<Vertex>,
    pub marked_adjacent_cells: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleEval {
    pub rule: Branch,
    /// Root of the cluster playing role `A`.
    pub a_root: Vertex,
    pub b_root: Vertex,
    pub holds: bool,
    pub note: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<IndirectCandidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnTrace {
    pub threshold_u: f64,
    pub threshold_v: f64,
    pub kept_by_u: bool,
    pub kept_by_v: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub u: CenterInfo,
    pub v: CenterInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub en: Option<EnTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parents: Option<(Option<Vertex>, Option<Vertex>)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub clusters: Vec<ClusterSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RuleEval>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleDecision {
    pub edge: Edge,
    pub answer: bool,
    pub branch: Branch,
    pub queries_used: u64,
    pub trace: Trace,
}

/// Bundles the shared inputs of repeated oracle calls.
#[derive(Clone, Copy)]
pub struct Oracle<'a> {
    pub graph: &'a Graph,
    pub src: &'a RandomSource,
    pub params: &'a Params,
}

impl<'a> Oracle<'a> {
    pub fn new(graph: &'a Graph, src: &'a RandomSource, params: &'a Params) -> Self {
        Oracle { graph, src, params }
    }

    pub fn answer(&self, u: Vertex, v: Vertex) -> Result<OracleDecision> {
        lssg_answer(self.graph, self.src, self.params, u, v)
    }

    pub fn contains(&self, e: Edge) -> Result<bool> {
        Ok(self.answer(e.lo, e.hi)?.answer)
    }
}

pub fn lssg_answer(g: &Graph, src: &RandomSource, params: &Params, u: Vertex, v: Vertex) -> Result<OracleDecision> {
    lssg_answer_probed(g, src, params, u, v).map(|(d, _)| d)
}

/// [`lssg_answer`] together with the vertices whose incidence lists the call read.
pub fn lssg_answer_probed(
    g: &Graph,
    src: &RandomSource,
    params: &Params,
    u: Vertex,
    v: Vertex,
) -> Result<(OracleDecision, Vec<Vertex>)> {
    let mut local = Local::new(g, src, params);
    let edge = Edge::new(u, v);
    if u == v || !local.neighbors(u)?.contains(&v) {
        return Err(LssgError::InvalidInput(format!("{edge} is not an edge of the graph")));
    }
    let iu = local.find_center(u)?;
    let iv = local.find_center(v)?;
    let mut trace = Trace {
        u: iu,
        v: iv,
        en: None,
        parents: None,
        clusters: Vec::new(),
        rules: Vec::new(),
    };

    let (answer, branch) = if iu.is_remote() && iv.is_remote() {
        let view_u = local.en_view(u)?;
        let view_v = local.en_view(v)?;
        let kept_by_u = view_u.keeps(edge);
        let kept_by_v = view_v.keeps(edge);
        trace.en = Some(EnTrace {
            threshold_u: view_u.threshold(),
            threshold_v: view_v.threshold(),
            kept_by_u,
            kept_by_v,
        });
        let answer = kept_by_u || kept_by_v;
        (answer, if answer { Branch::En } else { Branch::None })
    } else if boundary_answer(&iu, &iv) {
        (true, Branch::Boundary)
    } else if iu.center() == iv.center() {
        let pu = local.bfs_parent(u)?;
        let pv = local.bfs_parent(v)?;
        trace.parents = Some((pu, pv));
        let answer = pu == Some(v) || pv == Some(u);
        (answer, if answer { Branch::BfsTree } else { Branch::None })
    } else {
        let q = local.cluster_of(u)?;
        let w = local.cluster_of(v)?;
        let view_q = local.adjacency_view(&q)?;
        let view_w = local.adjacency_view(&w)?;
        for (c, view) in [(&q, &view_q), (&w, &view_w)] {
            trace.clusters.push(summarize(c, view));
        }
        let mut outcome = (false, Branch::None);
        let roles = [(&q, &w, &view_q, &view_w), (&w, &q, &view_w, &view_q)];
        'roles: for (a, b, view_a, view_b) in roles {
            let holds = rule_marked(a, b, edge, view_a);
            trace.rules.push(RuleEval {
                rule: Branch::RuleA,
                a_root: a.root,
                b_root: b.root,
                holds,
                note: format!(
                    "A marked: {}; min rank in E(A,B): {}",
                    a.marked,
                    fmt_edge(view_a.min_edge_to_cluster(b))
                ),
                candidates: Vec::new(),
            });
            if holds {
                outcome = (true, Branch::RuleA);
                break 'roles;
            }

            let holds = rule_no_marked_neighbor(a, b, edge, view_a);
            trace.rules.push(RuleEval {
                rule: Branch::RuleB,
                a_root: a.root,
                b_root: b.root,
                holds,
                note: format!(
                    "marked cells adjacent to A: {:?}; min rank in E(A,Vor(B)): {}",
                    view_a.marked_cells,
                    fmt_edge(view_a.min_edge_to_cell(b.center))
                ),
                candidates: Vec::new(),
            });
            if holds {
                outcome = (true, Branch::RuleB);
                break 'roles;
            }

            let ind = local.rule_indirect(a, edge, view_a, view_b)?;
            trace.rules.push(RuleEval {
                rule: Branch::RuleC,
                a_root: a.root,
                b_root: b.root,
                holds: ind.holds,
                note: format!(
                    "min rank in E(B,Vor(A)): {} (edge is min: {})",
                    fmt_edge(view_b.min_edge_to_cell(a.center)),
                    ind.edge_is_min_into_cell
                ),
                candidates: ind.candidates,
            });
            if ind.holds {
                outcome = (true, Branch::RuleC);
                break 'roles;
            }
        }
        outcome
    };

    let decision = OracleDecision {
        edge,
        answer,
        branch,
        queries_used: local.queries(),
        trace,
    };
    Ok((decision, local.probed_set()))
}

fn summarize(c: &Cluster, view: &crate::connectors::AdjacencyView) -> ClusterSummary {
    ClusterSummary {
        center: c.center,
        root: c.root,
        kind: c.kind,
        marked: c.marked,
        size: c.len(),
        members: c.members.clone(),
        adjacent_cells: view.adjacent_cells().collect(),
        marked_adjacent_cells: view.marked_cells.clone(),
    }
}

fn fmt_edge(e: Option<Edge>) -> String {
    e.map_or_else(|| "none".to_string(), |e| e.to_string())
}

fn fmt_info(info: &CenterInfo) -> String {
    match (info.center(), info.dist()) {
        (Some(c), Some(d)) => format!("center {c} at distance {d}"),
        _ => "remote".to_string(),
    }
}

/// Human-readable rendering of one oracle call.
pub fn explain(g: &Graph, src: &RandomSource, params: &Params, u: Vertex, v: Vertex) -> Result<String> {
    let d = lssg_answer(g, src, params, u, v)?;
    Ok(render(&d))
}

pub fn render(d: &OracleDecision) -> String {
    let mut out = String::new();
    let t = &d.trace;
    writeln!(out, "edge {}: {} via {} ({} queries)", d.edge, if d.answer { "KEEP" } else { "DROP" }, d.branch.as_str(), d.queries_used).unwrap();
    writeln!(out, "  {}: {}", t.u.vertex, fmt_info(&t.u)).unwrap();
    writeln!(out, "  {}: {}", t.v.vertex, fmt_info(&t.v)).unwrap();
    if t.u.is_remote() != t.v.is_remote() {
        writeln!(out, "  exactly one endpoint is remote").unwrap();
    }
    if let Some(en) = &t.en {
        writeln!(
            out,
            "  shifted thresholds: {:.4} at {}, {:.4} at {}; kept by {}: {}, by {}: {}",
            en.threshold_u, t.u.vertex, en.threshold_v, t.v.vertex, t.u.vertex, en.kept_by_u, t.v.vertex, en.kept_by_v
        )
        .unwrap();
    }
    if let Some((pu, pv)) = t.parents {
        writeln!(out, "  same cell; parent({}) = {:?}, parent({}) = {:?}", t.u.vertex, pu, t.v.vertex, pv).unwrap();
    }
    for c in &t.clusters {
        writeln!(
            out,
            "  cluster root {} ({:?}, center {}, {} members, marked {}); adjacent cells {:?}, marked {:?}",
            c.root, c.kind, c.center, c.size, c.marked, c.adjacent_cells, c.marked_adjacent_cells
        )
        .unwrap();
    }
    for r in &t.rules {
        writeln!(
            out,
            "  {} with A = {}, B = {}: {} ({})",
            r.rule.as_str(),
            r.a_root,
            r.b_root,
            r.holds,
            r.note
        )
        .unwrap();
        for c in &r.candidates {
            writeln!(
                out,
                "    marked cell {} -> C rooted at {}; Vor(dB) n Vor(dC) = {:?}; min rank cell {:?} (rank {})",
                c.marked_cell,
                c.target_root,
                c.common_cells,
                c.winner,
                c.winner_rank.as_deref().unwrap_or("-")
            )
            .unwrap();
        }
    }
    out
}
