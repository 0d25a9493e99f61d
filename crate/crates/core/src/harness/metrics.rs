//! Connectivity, stretch and bridge measurements on explicit subgraphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::graph::{Edge, Graph, Vertex};

const UNREACHED: usize = usize::MAX;

pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Number of connected components of the graph on `0..n` with the given edges.
pub fn component_count(n: usize, edges: impl IntoIterator<Item = Edge>) -> usize {
    let mut uf = UnionFind::new(n);
    let merges = edges.into_iter().filter(|e| uf.union(e.lo, e.hi)).count();
    n - merges
}

/// Whether `h` spans every connected component of `g`: the endpoints of every
/// edge of `g` are joined in `h`.
pub fn check_connectivity(g: &Graph, h: &BTreeSet<Edge>) -> bool {
    let mut uf = UnionFind::new(g.n());
    for e in h {
        uf.union(e.lo, e.hi);
    }
    g.edges().all(|e| uf.find(e.lo) == uf.find(e.hi))
}

/// Adjacency lists of an edge set over `0..n`.
pub fn adjacency_lists(n: usize, edges: &BTreeSet<Edge>) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.lo].push(e.hi);
        adj[e.hi].push(e.lo);
    }
    adj
}

/// Single-source hop distances over adjacency lists.
pub fn bfs_distances(adj: &[Vec<Vertex>], s: Vertex) -> Vec<usize> {
    let mut dist = vec![UNREACHED; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct StretchStats {
    /// Edges of `g` missing from `h`.
    pub rejected: usize,
    /// Rejected edges whose endpoints `h` does not connect.
    pub disconnected: usize,
    /// Maximum over rejected edges of the `h`-distance; 1 when nothing is rejected.
    pub max: usize,
    pub p95: usize,
    /// Finite stretch value -> number of rejected edges.
    pub histogram: BTreeMap<usize, usize>,
}

impl StretchStats {
    pub fn all_finite(&self) -> bool {
        self.disconnected == 0
    }

    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("stretch,count\n");
        for (s, c) in &self.histogram {
            out.push_str(&format!("{s},{c}\n"));
        }
        if self.disconnected > 0 {
            out.push_str(&format!("inf,{}\n", self.disconnected));
        }
        out
    }
}

/// `h`-distance between the endpoints of every edge of `g` not in `h`, in rank
/// order, with `None` for disconnected pairs.
pub fn rejected_distances(g: &Graph, h: &BTreeSet<Edge>) -> Vec<(Edge, Option<usize>)> {
    let adj = adjacency_lists(g.n(), h);
    let mut out = Vec::new();
    let mut cached: Option<(Vertex, Vec<usize>)> = None;
    // Rank order groups rejected edges by their smaller endpoint, so one BFS per
    // distinct `lo` suffices.
    for e in g.edges().filter(|e| !h.contains(e)) {
        if cached.as_ref().is_none_or(|(s, _)| *s != e.lo) {
            cached = Some((e.lo, bfs_distances(&adj, e.lo)));
        }
        let d = cached.as_ref().unwrap().1[e.hi];
        out.push((e, (d != UNREACHED).then_some(d)));
    }
    out
}

pub fn measure_stretch(g: &Graph, h: &BTreeSet<Edge>) -> StretchStats {
    let dists = rejected_distances(g, h);
    let mut finite: Vec<usize> = dists.iter().filter_map(|(_, d)| *d).collect();
    finite.sort_unstable();
    let mut histogram = BTreeMap::new();
    for &d in &finite {
        *histogram.entry(d).or_insert(0) += 1;
    }
    let p95 = if finite.is_empty() {
        1
    } else {
        finite[((finite.len() as f64 * 0.95).ceil() as usize).clamp(1, finite.len()) - 1]
    };
    StretchStats {
        rejected: dists.len(),
        disconnected: dists.len() - finite.len(),
        max: finite.last().copied().unwrap_or(1),
        p95,
        histogram,
    }
}

/// Maximum, over edges of the contracted graph `G_Vor`, of the hop distance
/// between their endpoints in the contracted `H_Vor`.
///
/// `cell_of[v]` names the node `v` contracts to; callers map remote vertices
/// to singleton nodes. Returns 0 when `G_Vor` has no edges and `None` if some
/// `G_Vor` edge is disconnected in `H_Vor`.
pub fn cell_stretch(g: &Graph, h: &BTreeSet<Edge>, cell_of: &[Vertex]) -> Option<usize> {
    let contract = |edges: &mut dyn Iterator<Item = Edge>| -> BTreeSet<Edge> {
        edges
            .filter(|e| cell_of[e.lo] != cell_of[e.hi])
            .map(|e| Edge::new(cell_of[e.lo], cell_of[e.hi]))
            .collect()
    };
    let g_vor = contract(&mut g.edges());
    let h_vor = contract(&mut h.iter().copied());
    let adj = adjacency_lists(g.n(), &h_vor);
    let mut worst = 0;
    let mut cached: Option<(Vertex, Vec<usize>)> = None;
    for e in &g_vor {
        let d = if h_vor.contains(e) {
            1
        } else {
            if cached.as_ref().is_none_or(|(s, _)| *s != e.lo) {
                cached = Some((e.lo, bfs_distances(&adj, e.lo)));
            }
            cached.as_ref().unwrap().1[e.hi]
        };
        if d == UNREACHED {
            return None;
        }
        worst = worst.max(d);
    }
    Some(worst)
}

/// All bridges of `g`, via an iterative low-link DFS.
pub fn bridges(g: &Graph) -> BTreeSet<Edge> {
    let n = g.n();
    let mut disc = vec![UNREACHED; n];
    let mut low = vec![0usize; n];
    let mut out = BTreeSet::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != UNREACHED {
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(root, None, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            let adj = g.adjacency(v);
            if top.2 < adj.len() {
                let w = adj[top.2];
                top.2 += 1;
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == UNREACHED {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(v), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.insert(Edge::new(p, v));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
        Graph::from_edges(n, 2, &edges).unwrap()
    }

    #[test]
    fn full_graph_has_unit_stretch() {
        let g = cycle(8);
        let h: BTreeSet<Edge> = g.edges().collect();
        assert!(check_connectivity(&g, &h));
        let s = measure_stretch(&g, &h);
        assert_eq!((s.rejected, s.max, s.disconnected), (0, 1, 0));
    }

    #[test]
    fn c8_one_rejected_edge() {
        let g = cycle(8);
        let h: BTreeSet<Edge> = g.edges().filter(|&e| e != Edge::new(0, 7)).collect();
        let s = measure_stretch(&g, &h);
        assert_eq!(s.max, 7);
        assert_eq!(s.histogram, BTreeMap::from([(7, 1)]));
        assert!(check_connectivity(&g, &h));
        assert_eq!(s.histogram_csv(), "stretch,count\n7,1\n");
    }

    #[test]
    fn disconnected_rejections_are_counted() {
        let g = cycle(4);
        let h = BTreeSet::from([Edge::new(0, 1), Edge::new(2, 3)]);
        assert!(!check_connectivity(&g, &h));
        let s = measure_stretch(&g, &h);
        assert_eq!((s.rejected, s.disconnected), (2, 2));
        assert!(!s.all_finite());
    }

    #[test]
    fn tree_has_only_bridges() {
        let edges: Vec<Edge> = (1..6).map(|i| Edge::new(i - 1, i)).collect();
        let g = Graph::from_edges(6, 2, &edges).unwrap();
        assert_eq!(bridges(&g), edges.into_iter().collect());
        assert!(bridges(&cycle(6)).is_empty());
    }

    #[test]
    fn bridge_between_triangles() {
        let edges = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)].map(|(a, b)| Edge::new(a, b));
        let g = Graph::from_edges(6, 3, &edges).unwrap();
        assert_eq!(bridges(&g), BTreeSet::from([Edge::new(2, 3)]));
    }

    #[test]
    fn cell_stretch_examples() {
        let g = cycle(6);
        let all: BTreeSet<Edge> = g.edges().collect();
        assert_eq!(cell_stretch(&g, &all, &[0; 6]), Some(0));
        // Two cells {0,1,2} and {3,4,5} joined by {2,3} only.
        let h: BTreeSet<Edge> = all.iter().copied().filter(|&e| e != Edge::new(0, 5)).collect();
        assert_eq!(cell_stretch(&g, &h, &[0, 0, 0, 3, 3, 3]), Some(1));
        // Three cells in a ring, one contracted edge missing.
        let h: BTreeSet<Edge> = all.iter().copied().filter(|&e| e != Edge::new(0, 5)).collect();
        assert_eq!(cell_stretch(&g, &h, &[0, 0, 2, 2, 4, 4]), Some(2));
    }

    #[test]
    fn components() {
        assert_eq!(component_count(4, [Edge::new(0, 1)]), 3);
    }
}
