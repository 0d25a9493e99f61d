//! Local reconstruction of the Voronoi partition and its refinement into clusters.
//!
//! Everything here runs inside a [`Local`] context, which owns the call's
//! [`Prober`] and memo tables. A context lives for exactly one oracle call; no
//! state crosses calls.
//!
//! Centers and center distances are measured in the whole graph. BFS trees and
//! clusters only ever contain non-remote vertices: a vertex `w` on a shortest
//! path from `v` to `c(v)` is closer to `c(v)` than `v`, hence non-remote, and
//! the id tie-break forces `c(w) = c(v)`.

use std::rc::Rc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::connectors::AdjacencyView;
use crate::error::{LssgError, Result};
use crate::graph::{Graph, Vertex};
use crate::params::Params;
use crate::probe::Prober;
use crate::randomness::RandomSource;
use crate::remote::EnLocalView;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CenterStatus {
    /// No center within `ell` hops.
    Remote,
    Assigned { center: Vertex, dist: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CenterInfo {
    pub vertex: Vertex,
    #[serde(flatten)]
    pub status: CenterStatus,
}

impl CenterInfo {
    pub fn is_remote(&self) -> bool {
        matches!(self.status, CenterStatus::Remote)
    }

    pub fn center(&self) -> Option<Vertex> {
        match self.status {
            CenterStatus::Assigned { center, .. } => Some(center),
            CenterStatus::Remote => None,
        }
    }

    pub fn dist(&self) -> Option<usize> {
        match self.status {
            CenterStatus::Assigned { dist, .. } => Some(dist),
            CenterStatus::Remote => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClusterKind {
    /// The cell has at most `k` vertices and forms one cluster.
    WholeCell,
    /// `|T(v)| >= k`: the vertex is a cluster by itself.
    Singleton,
    /// `T(u)` for the topmost ancestor `u` with `|T(u)| < k`.
    Subtree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub center: Vertex,
    /// Root of the cluster's subtree of the cell's BFS tree. Unique per cluster.
    pub root: Vertex,
    /// Sorted ascending.
    pub members: Vec<Vertex>,
    pub marked: bool,
    pub kind: ClusterKind,
}

impl Cluster {
    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Outcome of a capped exploration of `T(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubtreeProbe {
    /// `|T(u)|` reached the cap.
    Large,
    /// `|T(u)|` is below the cap; members sorted ascending.
    Small(Rc<[Vertex]>),
}

impl SubtreeProbe {
    pub fn size_capped(&self, cap: usize) -> usize {
        match self {
            SubtreeProbe::Large => cap,
            SubtreeProbe::Small(m) => m.len(),
        }
    }

    pub fn members(&self) -> Option<&[Vertex]> {
        match self {
            SubtreeProbe::Large => None,
            SubtreeProbe::Small(m) => Some(m),
        }
    }
}

/// Call-scoped local computation context.
pub struct Local<'a> {
    pub(crate) src: &'a RandomSource,
    pub(crate) params: &'a Params,
    pub(crate) probe: Prober<'a>,
    centers: FxHashMap<Vertex, CenterInfo>,
    parents: FxHashMap<Vertex, Option<Vertex>>,
    children: FxHashMap<Vertex, Rc<[Vertex]>>,
    subtrees: FxHashMap<(Vertex, usize), SubtreeProbe>,
    clusters: FxHashMap<Vertex, Rc<Cluster>>,
    pub(crate) views: FxHashMap<Vertex, Rc<AdjacencyView>>,
    pub(crate) en_views: FxHashMap<Vertex, Rc<EnLocalView>>,
}

impl<'a> Local<'a> {
    pub fn new(graph: &'a Graph, src: &'a RandomSource, params: &'a Params) -> Self {
        Local {
            src,
            params,
            probe: Prober::new(graph),
            centers: FxHashMap::default(),
            parents: FxHashMap::default(),
            children: FxHashMap::default(),
            subtrees: FxHashMap::default(),
            clusters: FxHashMap::default(),
            views: FxHashMap::default(),
            en_views: FxHashMap::default(),
        }
    }

    pub fn queries(&self) -> u64 {
        self.probe.queries()
    }

    /// Vertices whose incidence lists this call has read.
    pub fn probed_set(&self) -> Vec<Vertex> {
        self.probe.probed_set()
    }

    pub fn params(&self) -> &'a Params {
        self.params
    }

    pub fn source(&self) -> &'a RandomSource {
        self.src
    }

    pub(crate) fn neighbors(&mut self, v: Vertex) -> Result<&'a [Vertex]> {
        self.probe.neighbors(v)
    }

    /// Nearest center of `v` within `ell` hops, ties broken by smaller center id.
    pub fn find_center(&mut self, v: Vertex) -> Result<CenterInfo> {
        if let Some(&info) = self.centers.get(&v) {
            return Ok(info);
        }
        if v >= self.probe.graph().n() {
            return Err(LssgError::InvalidInput(format!("vertex {v} out of range")));
        }
        if self.src.is_center(self.params, v) {
            return Ok(self.record(v, v, 0));
        }

        let mut pred: FxHashMap<Vertex, Vertex> = FxHashMap::default();
        pred.insert(v, v);
        let mut level = vec![v];
        for depth in 1..=self.params.ell {
            let mut next = Vec::new();
            for &x in &level {
                for &y in self.probe.neighbors(x)? {
                    if let std::collections::hash_map::Entry::Vacant(slot) = pred.entry(y) {
                        slot.insert(x);
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let found = next
                .iter()
                .copied()
                .filter(|&y| self.src.is_center(self.params, y))
                .min();
            if let Some(c) = found {
                // Every vertex on the discovered shortest path shares the center.
                let mut y = c;
                let mut dist_to_c = 0;
                while y != v {
                    self.record(y, c, dist_to_c);
                    y = pred[&y];
                    dist_to_c += 1;
                }
                debug_assert_eq!(dist_to_c, depth);
                return Ok(self.record(v, c, depth));
            }
            level = next;
        }
        let info = CenterInfo {
            vertex: v,
            status: CenterStatus::Remote,
        };
        self.centers.insert(v, info);
        Ok(info)
    }

    fn record(&mut self, v: Vertex, center: Vertex, dist: usize) -> CenterInfo {
        let info = CenterInfo {
            vertex: v,
            status: CenterStatus::Assigned { center, dist },
        };
        let prev = self.centers.insert(v, info);
        debug_assert!(prev.is_none() || prev == Some(info), "center info for {v} changed");
        info
    }

    pub fn is_remote(&mut self, v: Vertex) -> Result<bool> {
        Ok(self.find_center(v)?.is_remote())
    }

    fn assigned(&mut self, v: Vertex) -> Result<(Vertex, usize)> {
        match self.find_center(v)?.status {
            CenterStatus::Assigned { center, dist } => Ok((center, dist)),
            CenterStatus::Remote => Err(LssgError::InvalidInput(format!(
                "vertex {v} is remote and has no cell"
            ))),
        }
    }

    /// Parent of `u` in its cell's BFS tree: the smallest-id neighbor one hop
    /// closer to the same center. `None` for centers.
    pub fn bfs_parent(&mut self, u: Vertex) -> Result<Option<Vertex>> {
        if let Some(&p) = self.parents.get(&u) {
            return Ok(p);
        }
        let (center, dist) = self.assigned(u)?;
        let parent = if dist == 0 {
            None
        } else {
            let mut found = None;
            for &w in self.probe.neighbors(u)? {
                let s = self.find_center(w)?.status;
                if s == (CenterStatus::Assigned { center, dist: dist - 1 }) {
                    found = Some(w);
                    break;
                }
            }
            if found.is_none() {
                return Err(LssgError::InvariantViolation(format!(
                    "vertex {u} at distance {dist} from center {center} has no parent candidate"
                )));
            }
            found
        };
        self.parents.insert(u, parent);
        Ok(parent)
    }

    /// Children of `u` in its cell's BFS tree, ascending.
    pub fn bfs_children(&mut self, u: Vertex) -> Result<Rc<[Vertex]>> {
        if let Some(c) = self.children.get(&u) {
            return Ok(c.clone());
        }
        let (center, dist) = self.assigned(u)?;
        let mut kids = Vec::new();
        for &w in self.probe.neighbors(u)? {
            let s = self.find_center(w)?.status;
            if s == (CenterStatus::Assigned { center, dist: dist + 1 }) && self.bfs_parent(w)? == Some(u) {
                kids.push(w);
            }
        }
        let kids: Rc<[Vertex]> = kids.into();
        self.children.insert(u, kids.clone());
        Ok(kids)
    }

    /// Explores `T(u)` until `k` vertices are seen.
    pub fn subtree_probe(&mut self, u: Vertex) -> Result<SubtreeProbe> {
        self.subtree_probe_capped(u, self.params.k)
    }

    /// Explores `T(u)` until `cap` vertices are seen.
    pub fn subtree_probe_capped(&mut self, u: Vertex, cap: usize) -> Result<SubtreeProbe> {
        if let Some(p) = self.subtrees.get(&(u, cap)) {
            return Ok(p.clone());
        }
        self.assigned(u)?;
        let mut members = vec![u];
        let mut stack = vec![u];
        let mut outcome = None;
        if cap <= 1 {
            outcome = Some(SubtreeProbe::Large);
        }
        'explore: while outcome.is_none() {
            let Some(x) = stack.pop() else { break };
            for &ch in self.bfs_children(x)?.iter() {
                members.push(ch);
                if members.len() >= cap {
                    outcome = Some(SubtreeProbe::Large);
                    break 'explore;
                }
                stack.push(ch);
            }
        }
        let outcome = outcome.unwrap_or_else(|| {
            members.sort_unstable();
            SubtreeProbe::Small(members.into())
        });
        self.subtrees.insert((u, cap), outcome.clone());
        Ok(outcome)
    }

    /// The cluster containing the non-remote vertex `v`.
    pub fn cluster_of(&mut self, v: Vertex) -> Result<Rc<Cluster>> {
        if let Some(c) = self.clusters.get(&v) {
            return Ok(c.clone());
        }
        let (center, _) = self.assigned(v)?;
        let k = self.params.k;
        let marked = self.src.is_marked(self.params, center);

        let (root, members, kind) =
            if let SubtreeProbe::Small(cell) = self.subtree_probe_capped(center, k.saturating_add(1))? {
                (center, cell.to_vec(), ClusterKind::WholeCell)
            } else if self.subtree_probe(v)? == SubtreeProbe::Large {
                (v, vec![v], ClusterKind::Singleton)
            } else {
                let mut u = v;
                loop {
                    let p = self.bfs_parent(u)?.ok_or_else(|| {
                        LssgError::InvariantViolation(format!(
                            "reached center {u} while climbing from {v}, but its cell exceeds k"
                        ))
                    })?;
                    if self.subtree_probe(p)? == SubtreeProbe::Large {
                        break;
                    }
                    u = p;
                }
                let members = match self.subtree_probe(u)? {
                    SubtreeProbe::Small(m) => m.to_vec(),
                    SubtreeProbe::Large => unreachable!("climb stops below the first large subtree"),
                };
                (u, members, ClusterKind::Subtree)
            };

        let cluster = Rc::new(Cluster {
            center,
            root,
            members,
            marked,
            kind,
        });
        for &m in &cluster.members {
            self.clusters.insert(m, cluster.clone());
        }
        Ok(cluster)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::params::{derive_params, ParamConfig};
    use crate::randomness::{Fixture, Seed};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
        Graph::from_edges(n, 2, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<Edge> = (1..n).map(|i| Edge::new(i - 1, i)).collect();
        Graph::from_edges(n, 2, &edges).unwrap()
    }

    fn setup(g: &Graph, centers: &[Vertex], ell: usize, k: usize) -> (RandomSource, Params) {
        let src = RandomSource::with_fixture(
            Seed::from_u64(1),
            Fixture::default().with_centers(centers.iter().copied()).with_marks([]),
        );
        let cfg = ParamConfig {
            ell: Some(ell),
            k: Some(k),
            ..ParamConfig::default()
        };
        let params = derive_params(g.n(), g.delta_max(), &cfg, &src).unwrap();
        (src, params)
    }

    fn assigned(v: Vertex, center: Vertex, dist: usize) -> CenterInfo {
        CenterInfo {
            vertex: v,
            status: CenterStatus::Assigned { center, dist },
        }
    }

    #[test]
    fn find_center_examples() {
        let c8 = cycle(8);
        let (src, params) = setup(&c8, &[0, 4], 2, 10);
        let mut local = Local::new(&c8, &src, &params);
        assert_eq!(local.find_center(1).unwrap(), assigned(1, 0, 1));
        assert_eq!(local.find_center(2).unwrap(), assigned(2, 0, 2));
        // d(6,0) = d(6,4) = 2; the smaller id wins.
        assert_eq!(local.find_center(6).unwrap(), assigned(6, 0, 2));
        assert_eq!(local.find_center(5).unwrap(), assigned(5, 4, 1));

        let p10 = path(10);
        let (src, params) = setup(&p10, &[0], 2, 10);
        let mut local = Local::new(&p10, &src, &params);
        assert!(local.find_center(5).unwrap().is_remote());
        assert_eq!(local.find_center(2).unwrap(), assigned(2, 0, 2));
    }

    #[test]
    fn parent_examples() {
        let p4 = path(4);
        let (src, params) = setup(&p4, &[0], 5, 10);
        let mut local = Local::new(&p4, &src, &params);
        assert_eq!(local.bfs_parent(2).unwrap(), Some(1));
        assert_eq!(local.bfs_parent(0).unwrap(), None);
        assert_eq!(&*local.bfs_children(1).unwrap(), &[2]);

        let c8 = cycle(8);
        let (src, params) = setup(&c8, &[0], 5, 10);
        let mut local = Local::new(&c8, &src, &params);
        assert_eq!(local.bfs_parent(4).unwrap(), Some(3));
        assert_eq!(&*local.bfs_children(3).unwrap(), &[4]);
        assert!(local.bfs_children(5).unwrap().is_empty());
    }

    #[test]
    fn parent_of_remote_vertex_is_an_input_error() {
        let p10 = path(10);
        let (src, params) = setup(&p10, &[0], 2, 10);
        let mut local = Local::new(&p10, &src, &params);
        assert!(matches!(local.bfs_parent(7), Err(LssgError::InvalidInput(_))));
    }

    #[test]
    fn subtree_probe_examples() {
        let p6 = path(6);
        let (src, params) = setup(&p6, &[0], 10, 2);
        let mut local = Local::new(&p6, &src, &params);
        assert_eq!(local.subtree_probe(4).unwrap(), SubtreeProbe::Large);
        assert_eq!(local.subtree_probe(5).unwrap().members(), Some(&[5][..]));
        assert_eq!(local.subtree_probe(5).unwrap().size_capped(2), 1);

        let (src, params) = setup(&p6, &[0], 10, 100);
        let mut local = Local::new(&p6, &src, &params);
        assert_eq!(local.subtree_probe(2).unwrap().members(), Some(&[2, 3, 4, 5][..]));
    }

    #[test]
    fn cluster_examples() {
        let c8 = cycle(8);
        let (src, params) = setup(&c8, &[0, 4], 4, 10);
        let mut local = Local::new(&c8, &src, &params);
        let c = local.cluster_of(1).unwrap();
        assert_eq!(c.kind, ClusterKind::WholeCell);
        assert_eq!(c.members, vec![0, 1, 2, 6, 7]);
        assert_eq!(c.root, 0);

        let p6 = path(6);
        let (src, params) = setup(&p6, &[0], 10, 2);
        let mut local = Local::new(&p6, &src, &params);
        let c4 = local.cluster_of(4).unwrap();
        assert_eq!((c4.kind, c4.members.clone()), (ClusterKind::Singleton, vec![4]));
        let c5 = local.cluster_of(5).unwrap();
        assert_eq!((c5.kind, c5.members.clone(), c5.root), (ClusterKind::Subtree, vec![5], 5));
    }

    #[test]
    fn cell_of_exactly_k_is_one_cluster() {
        let p4 = path(4);
        let (src, params) = setup(&p4, &[0], 10, 4);
        let mut local = Local::new(&p4, &src, &params);
        let c = local.cluster_of(3).unwrap();
        assert_eq!(c.kind, ClusterKind::WholeCell);
        assert_eq!(c.members.len(), 4);
    }

    #[test]
    fn subtree_cluster_climbs_to_the_right_ancestor() {
        // Path 0..9 rooted at 0 with k = 4: T(6) = {6..9} is large, T(7) = {7,8,9} small.
        let p10 = path(10);
        let (src, params) = setup(&p10, &[0], 20, 4);
        let mut local = Local::new(&p10, &src, &params);
        let c = local.cluster_of(9).unwrap();
        assert_eq!((c.root, c.members.clone()), (7, vec![7, 8, 9]));
        assert_eq!(local.cluster_of(8).unwrap(), c);
        assert_eq!(local.cluster_of(6).unwrap().kind, ClusterKind::Singleton);
    }
}
