//! Global, non-local construction of the spanner.
//!
//! Everything here is computed over the whole graph at once: a multi-source
//! BFS for the cells, bottom-up subtree sizes for the clusters, and
//! source-centric BFS for the exponential-shift spanner. None of it reuses the
//! local machinery, so agreement with the oracle is a meaningful check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::graph::{Edge, Graph, Vertex};
use crate::params::Params;
use crate::partition::ClusterKind;
use crate::randomness::RandomSource;

const UNREACHED: usize = usize::MAX;

#[derive(Debug, Clone, Serialize)]
pub struct RefCluster {
    pub root: Vertex,
    pub center: Vertex,
    pub kind: ClusterKind,
    pub marked: bool,
    pub members: Vec<Vertex>,
    /// Rank-minimum edge into each adjacent cluster of another cell, keyed by root.
    #[serde(skip)]
    pub to_cluster: BTreeMap<Vertex, Edge>,
    /// Rank-minimum edge into each adjacent cell other than its own, keyed by center.
    #[serde(skip)]
    pub to_cell: BTreeMap<Vertex, Edge>,
}

/// The partition underlying the construction.
#[derive(Debug, Clone, Serialize)]
pub struct RefPartition {
    pub centers: Vec<Vertex>,
    /// `None` for remote vertices.
    pub center_of: Vec<Option<Vertex>>,
    pub dist: Vec<Option<usize>>,
    pub parent: Vec<Option<Vertex>>,
    pub subtree_size: Vec<usize>,
    pub cluster_root: Vec<Option<Vertex>>,
    pub clusters: Vec<RefCluster>,
    #[serde(skip)]
    cluster_index: Vec<usize>,
}

impl RefPartition {
    pub fn is_remote(&self, v: Vertex) -> bool {
        self.center_of[v].is_none()
    }

    pub fn remote_count(&self) -> usize {
        self.center_of.iter().filter(|c| c.is_none()).count()
    }

    pub fn cluster(&self, v: Vertex) -> Option<&RefCluster> {
        self.cluster_root[v].map(|_| &self.clusters[self.cluster_index[v]])
    }

    fn cluster_by_root(&self, root: Vertex) -> &RefCluster {
        &self.clusters[self.cluster_index[root]]
    }
}

/// Which part of the construction selected an edge. An edge can qualify
/// under several rules; each set is recorded independently.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RefEdgeSets {
    pub tree: BTreeSet<Edge>,
    pub marked: BTreeSet<Edge>,
    pub unmarked: BTreeSet<Edge>,
    pub indirect: BTreeSet<Edge>,
    pub en: BTreeSet<Edge>,
    pub boundary: BTreeSet<Edge>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceSpanner {
    pub edges: BTreeSet<Edge>,
    pub parts: RefEdgeSets,
    pub partition: RefPartition,
    /// Some remote vertex drew `r_v >= h`.
    pub en_radius_violation: bool,
}

impl ReferenceSpanner {
    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn reference_partition(g: &Graph, src: &RandomSource, params: &Params) -> RefPartition {
    let n = g.n();
    let centers: Vec<Vertex> = (0..n).filter(|&v| src.is_center(params, v)).collect();
    let mut dist = vec![UNREACHED; n];
    let mut center = vec![UNREACHED; n];
    let mut levels: Vec<Vec<Vertex>> = vec![centers.clone()];
    for &c in &centers {
        dist[c] = 0;
        center[c] = c;
    }
    for d in 0..params.ell {
        let mut next = Vec::new();
        for &x in &levels[d] {
            for &y in g.adjacency(x) {
                if dist[y] == UNREACHED {
                    dist[y] = d + 1;
                    center[y] = center[x];
                    next.push(y);
                } else if dist[y] == d + 1 && center[x] < center[y] {
                    center[y] = center[x];
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }

    let mut parent = vec![None; n];
    for level in levels.iter().skip(1) {
        for &v in level {
            parent[v] = g
                .adjacency(v)
                .iter()
                .copied()
                .find(|&w| center[w] == center[v] && dist[w] + 1 == dist[v]);
        }
    }

    let mut subtree_size = vec![0usize; n];
    for level in levels.iter().rev() {
        for &v in level {
            subtree_size[v] += 1;
            if let Some(p) = parent[v] {
                subtree_size[p] += subtree_size[v];
            }
        }
    }

    let k = params.k;
    let mut cluster_root = vec![None; n];
    let mut kinds = BTreeMap::new();
    for level in &levels {
        for &v in level {
            let c = center[v];
            let (root, kind) = if subtree_size[c] <= k {
                (c, ClusterKind::WholeCell)
            } else if subtree_size[v] >= k {
                (v, ClusterKind::Singleton)
            } else {
                let p = parent[v].expect("a vertex with a small subtree in a large cell is not a center");
                if subtree_size[p] >= k {
                    (v, ClusterKind::Subtree)
                } else {
                    (cluster_root[p].unwrap(), ClusterKind::Subtree)
                }
            };
            cluster_root[v] = Some(root);
            kinds.entry(root).or_insert(kind);
        }
    }

    let mut members: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for v in 0..n {
        if let Some(r) = cluster_root[v] {
            members.entry(r).or_default().push(v);
        }
    }
    let mut cluster_index = vec![usize::MAX; n];
    let mut clusters = Vec::with_capacity(members.len());
    for (root, mem) in members {
        let idx = clusters.len();
        for &v in &mem {
            cluster_index[v] = idx;
        }
        let c = center[root];
        clusters.push(RefCluster {
            root,
            center: c,
            kind: kinds[&root],
            marked: src.is_marked(params, c),
            members: mem,
            to_cluster: BTreeMap::new(),
            to_cell: BTreeMap::new(),
        });
    }
    for e in g.edges() {
        let (a, b) = (e.lo, e.hi);
        if center[a] == UNREACHED || center[b] == UNREACHED || center[a] == center[b] {
            continue;
        }
        for (x, y) in [(a, b), (b, a)] {
            let ci = &mut clusters[cluster_index[x]];
            // Edges arrive in rank order, so the first one seen is the minimum.
            ci.to_cluster.entry(cluster_root[y].unwrap()).or_insert(e);
            ci.to_cell.entry(center[y]).or_insert(e);
        }
    }

    let opt = |x: usize| (x != UNREACHED).then_some(x);
    RefPartition {
        centers,
        center_of: center.iter().map(|&c| opt(c)).collect(),
        dist: dist.iter().map(|&d| opt(d)).collect(),
        parent,
        subtree_size,
        cluster_root,
        clusters,
        cluster_index,
    }
}

pub fn reference_spanner(g: &Graph, src: &RandomSource, params: &Params) -> ReferenceSpanner {
    let part = reference_partition(g, src, params);
    let mut parts = RefEdgeSets::default();

    for v in 0..g.n() {
        if let Some(p) = part.parent[v] {
            parts.tree.insert(Edge::new(v, p));
        }
    }

    for a in &part.clusters {
        // Every cluster connects to every adjacent marked cluster.
        for (&root, &e) in &a.to_cluster {
            if part.cluster_by_root(root).marked {
                parts.marked.insert(e);
            }
        }
        // A cluster with no marked adjacent cell connects to every adjacent cell.
        if a.to_cell.keys().all(|&c| !src.is_marked(params, c)) {
            parts.unmarked.extend(a.to_cell.values().copied());
        }
    }

    // Indirect rule, driven from the participating cluster `b`.
    for b in &part.clusters {
        for (&cell, &e_bv) in &b.to_cell {
            if !src.is_marked(params, cell) {
                continue;
            }
            let far = if part.center_of[e_bv.lo] == Some(cell) { e_bv.lo } else { e_bv.hi };
            let c = part.cluster(far).expect("far endpoint is in a cell");
            for &a_root in b.to_cluster.keys() {
                let a = part.cluster_by_root(a_root);
                let best = a
                    .to_cell
                    .keys()
                    .filter(|x| c.to_cell.contains_key(x))
                    .min_by_key(|&&x| src.cell_rank(x));
                if best != Some(&b.center) {
                    continue;
                }
                let e_ab = a.to_cluster[&b.root];
                if a.to_cell[&b.center] == e_ab {
                    parts.indirect.insert(e_ab);
                }
            }
        }
    }

    let (en, violation) = exponential_shift_edges(g, src, params, &part);
    parts.en = en;
    for e in g.edges() {
        if part.is_remote(e.lo) != part.is_remote(e.hi) {
            parts.boundary.insert(e);
        }
    }

    let mut edges = BTreeSet::new();
    for set in [&parts.tree, &parts.marked, &parts.unmarked, &parts.indirect, &parts.en, &parts.boundary] {
        edges.extend(set.iter().copied());
    }
    ReferenceSpanner {
        edges,
        parts,
        partition: part,
        en_radius_violation: violation,
    }
}

/// Source-centric evaluation: a BFS inside `R` from each remote `u` tells
/// every reached `v` its shifted value `r_u - d(u, v)`, and the first hop
/// from `v` back towards `u` is its smallest-id neighbor one step closer.
fn exponential_shift_edges(g: &Graph, src: &RandomSource, params: &Params, part: &RefPartition) -> (BTreeSet<Edge>, bool) {
    let n = g.n();
    let remote: Vec<Vertex> = (0..n).filter(|&v| part.is_remote(v)).collect();
    let radius: BTreeMap<Vertex, f64> = remote.iter().map(|&v| (v, src.exp_radius(params, v))).collect();
    let violation = radius.values().any(|&r| r >= params.h as f64);

    let mut dist = vec![UNREACHED; n];
    let mut touched = Vec::new();
    let bfs = |u: Vertex, dist: &mut Vec<usize>, touched: &mut Vec<Vertex>| {
        for &t in touched.iter() {
            dist[t] = UNREACHED;
        }
        touched.clear();
        dist[u] = 0;
        touched.push(u);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == params.h {
                continue;
            }
            for &y in g.adjacency(x) {
                if dist[y] == UNREACHED && part.is_remote(y) {
                    dist[y] = dist[x] + 1;
                    touched.push(y);
                    queue.push_back(y);
                }
            }
        }
    };

    let mut best: BTreeMap<Vertex, f64> = radius.clone();
    for &u in &remote {
        bfs(u, &mut dist, &mut touched);
        let ru = radius[&u];
        for &v in &touched {
            let m = ru - dist[v] as f64;
            let b = best.get_mut(&v).unwrap();
            if m > *b {
                *b = m;
            }
        }
    }

    let mut edges = BTreeSet::new();
    for &u in &remote {
        bfs(u, &mut dist, &mut touched);
        let ru = radius[&u];
        for &v in &touched {
            if v == u || ru - (dist[v] as f64) < best[&v] - 1.0 {
                continue;
            }
            let hop = g
                .adjacency(v)
                .iter()
                .copied()
                .find(|&w| dist[w] != UNREACHED && dist[w] + 1 == dist[v])
                .expect("a reached vertex has a predecessor");
            edges.insert(Edge::new(v, hop));
        }
    }
    (edges, violation)
}
