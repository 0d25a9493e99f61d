//! Immutable bounded-degree graphs with incidence-list query access.
//!
//! Neighbor lists are stored in ascending id order, which fixes the incidence
//! order used by every probe and every BFS in the crate. The only way the
//! local algorithms read the graph is [`Graph::neighbor`], which charges one
//! query to a [`QueryCounter`].

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, LssgError, Result};

pub type Vertex = usize;

/// An undirected edge, normalized so that `lo < hi`.
///
/// The derived ordering compares `lo` first and `hi` second, which is exactly
/// the edge rank induced by the vertex id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge { lo: u, hi: v }
        } else {
            Edge { lo: v, hi: u }
        }
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.lo {
            self.hi
        } else {
            self.lo
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.lo == x || self.hi == x
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// Strict total order on edges: min endpoints first, then max endpoints.
pub fn edge_rank_less(e1: Edge, e2: Edge) -> bool {
    e1 < e2
}

/// Number of neighbor probes performed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QueryCounter {
    count: u64,
}

impl QueryCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn reset(&mut self) {
        self.count = 0;
    }

    fn charge(&mut self) {
        self.count += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    delta_max: usize,
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity and the degree bound.
    pub fn from_edges(n: usize, delta_max: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut degree = vec![0usize; n];
        for e in edges {
            if e.hi >= n {
                return Err(GraphError::Invalid(format!("edge {e} out of range for n = {n}")));
            }
            if e.lo == e.hi {
                return Err(GraphError::Invalid(format!("self-loop on vertex {}", e.lo)));
            }
            degree[e.lo] += 1;
            degree[e.hi] += 1;
        }
        if let Some(v) = (0..n).find(|&v| degree[v] > delta_max) {
            return Err(GraphError::Invalid(format!(
                "vertex {v} has degree {} > {delta_max}",
                degree[v]
            )));
        }
        let mut lists: Vec<Vec<Vertex>> = degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        for e in edges {
            lists[e.lo].push(e.hi);
            lists[e.hi].push(e.lo);
        }
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::Invalid(format!("parallel edges at vertex {v}")));
            }
        }
        Ok(Self::from_sorted_lists(delta_max, lists))
    }

    /// Builds a graph from explicit neighbor lists, which must be symmetric,
    /// simple and within the degree bound. Lists may be in any order.
    pub fn from_adjacency(delta_max: usize, mut lists: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = lists.len();
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if list.len() > delta_max {
                return Err(GraphError::Invalid(format!("vertex {v} exceeds degree bound {delta_max}")));
            }
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::Invalid(format!("parallel edges at vertex {v}")));
            }
            if let Some(&w) = list.iter().find(|&&w| w == v || w >= n) {
                return Err(GraphError::Invalid(format!("vertex {v} has invalid neighbor {w}")));
            }
        }
        for (v, list) in lists.iter().enumerate() {
            for &w in list {
                if lists[w].binary_search(&v).is_err() {
                    return Err(GraphError::Asymmetric { u: v, v: w });
                }
            }
        }
        Ok(Self::from_sorted_lists(delta_max, lists))
    }

    fn from_sorted_lists(delta_max: usize, lists: Vec<Vec<Vertex>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for list in lists {
            targets.extend(list);
            offsets.push(targets.len());
        }
        Graph {
            n: offsets.len() - 1,
            delta_max,
            offsets,
            targets,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn delta_max(&self) -> usize {
        self.delta_max
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Uncounted access to the full neighbor list. Reserved for global
    /// (reference, harness) computations; local code goes through probes.
    pub fn adjacency(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adjacency(u).binary_search(&v).is_ok()
    }

    /// The `i`-th neighbor of `v` (1-based) in ascending order, or `None` if
    /// `v` has fewer than `i` neighbors. Charges exactly one query.
    pub fn neighbor(&self, v: Vertex, i: usize, ctr: &mut QueryCounter) -> Result<Option<Vertex>> {
        if v >= self.n {
            return Err(LssgError::InvalidInput(format!("vertex {v} out of range (n = {})", self.n)));
        }
        if i == 0 || i > self.delta_max {
            return Err(LssgError::InvalidInput(format!(
                "neighbor index {i} outside 1..={}",
                self.delta_max
            )));
        }
        ctr.charge();
        Ok(self.adjacency(v).get(i - 1).copied())
    }

    /// All edges in ascending rank order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adjacency(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge { lo: u, hi: v })
        })
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(GraphError::Malformed {
            line: 1,
            msg: "missing header \"n m delta\"".into(),
        })?;
        let fields = parse_fields(hline, header, 3)?;
        let (n, m, delta_max) = (fields[0], fields[1], fields[2]);

        let mut degree = vec![0usize; n];
        let mut edges = Vec::with_capacity(m);
        let mut last: Option<Edge> = None;
        for (line, body) in lines {
            let f = parse_fields(line, body, 2)?;
            let (u, v) = (f[0], f[1]);
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if u > v {
                return Err(GraphError::Malformed {
                    line,
                    msg: format!("expected u < v, got \"{u} {v}\""),
                });
            }
            if v >= n {
                return Err(GraphError::Malformed {
                    line,
                    msg: format!("vertex {v} out of range (n = {n})"),
                });
            }
            let e = Edge { lo: u, hi: v };
            if last.is_some_and(|prev| prev >= e) {
                return Err(GraphError::Unsorted { line });
            }
            last = Some(e);
            for x in [u, v] {
                degree[x] += 1;
                if degree[x] > delta_max {
                    return Err(GraphError::DegreeBound {
                        line,
                        vertex: x,
                        delta_max,
                    });
                }
            }
            edges.push(e);
            if edges.len() > m {
                return Err(GraphError::Malformed {
                    line,
                    msg: format!("more than the {m} edges declared in the header"),
                });
            }
        }
        if edges.len() != m {
            return Err(GraphError::Malformed {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, delta_max, &edges)
    }

    /// Canonical text form: header, one edge per line in rank order, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::with_capacity(16 + self.m() * 12);
        writeln!(out, "{} {} {}", self.n, self.m(), self.delta_max).unwrap();
        for e in self.edges() {
            writeln!(out, "{} {}", e.lo, e.hi).unwrap();
        }
        out
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GraphError> {
        let text = std::fs::read_to_string(path)?;
        Graph::parse(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), GraphError> {
        std::fs::write(path, self.to_canonical_string())?;
        Ok(())
    }
}

fn parse_fields(line: usize, body: &str, expected: usize) -> Result<Vec<usize>, GraphError> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != expected {
        return Err(GraphError::Malformed {
            line,
            msg: format!("expected {expected} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| GraphError::Malformed {
                line,
                msg: format!("not a nonnegative integer: {f:?}"),
            })
        })
        .collect()
}

/// Writes an edge subset in the graph file format so it can be reloaded as a graph.
pub fn edge_list_string(n: usize, delta_max: usize, edges: &[Edge]) -> String {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = String::new();
    writeln!(out, "{} {} {}", n, sorted.len(), delta_max).unwrap();
    for e in sorted {
        writeln!(out, "{} {}", e.lo, e.hi).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<Edge> = (1..n).map(|i| Edge::new(i - 1, i)).collect();
        Graph::from_edges(n, 2, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
        Graph::from_edges(n, 2, &edges).unwrap()
    }

    #[test]
    fn neighbor_follows_ascending_order() {
        let g = path(3);
        let mut ctr = QueryCounter::new();
        assert_eq!(g.neighbor(1, 1, &mut ctr).unwrap(), Some(0));
        assert_eq!(g.neighbor(1, 2, &mut ctr).unwrap(), Some(2));
        assert_eq!(g.neighbor(0, 2, &mut ctr).unwrap(), None);
        assert_eq!(ctr.count(), 3);

        let c4 = cycle(4);
        assert_eq!(c4.neighbor(0, 1, &mut ctr).unwrap(), Some(1));
        assert_eq!(c4.neighbor(0, 2, &mut ctr).unwrap(), Some(3));
        assert_eq!(ctr.count(), 5);
    }

    #[test]
    fn neighbor_rejects_bad_indices() {
        let g = path(3);
        let mut ctr = QueryCounter::new();
        assert!(g.neighbor(3, 1, &mut ctr).is_err());
        assert!(g.neighbor(0, 0, &mut ctr).is_err());
        assert!(g.neighbor(0, 3, &mut ctr).is_err());
        assert_eq!(ctr.count(), 0);
    }

    #[test]
    fn edge_rank_examples() {
        assert!(edge_rank_less(Edge::new(1, 6), Edge::new(2, 5)));
        assert!(edge_rank_less(Edge::new(3, 7), Edge::new(9, 3)));
        assert!(!edge_rank_less(Edge::new(4, 5), Edge::new(5, 4)));
    }

    #[test]
    fn parse_path_file() {
        let g = Graph::parse("3 2 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, path(3));
        assert_eq!(g.to_canonical_string(), "3 2 2\n0 1\n1 2\n");
    }

    #[test]
    fn parse_canonicalizes_comments_and_spacing() {
        let g = Graph::parse("# a comment\n3   2 2\n# another\n0 1\n\n1    2\n").unwrap();
        assert_eq!(g.to_canonical_string(), "3 2 2\n0 1\n1 2\n");
    }

    #[test]
    fn parse_errors_name_the_line() {
        match Graph::parse("2 1 2\n0 0\n") {
            Err(GraphError::SelfLoop { line: 2, vertex: 0 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse("4 3 2\n0 1\n0 2\n0 3\n") {
            Err(GraphError::DegreeBound { line: 4, vertex: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse("3 2 2\n1 2\n0 1\n") {
            Err(GraphError::Unsorted { line: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse("3 2 2\n0 1\n0 1\n") {
            Err(GraphError::Unsorted { line: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Graph::parse("3 2 2\n0 1\n"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse("3 1 2\n0 x\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("3 1 2\n2 1\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("3 1 2\n0 3\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn adjacency_constructor_checks_symmetry() {
        let err = Graph::from_adjacency(2, vec![vec![1], vec![]]).unwrap_err();
        assert!(matches!(err, GraphError::Asymmetric { u: 0, v: 1 }));
        let g = Graph::from_adjacency(2, vec![vec![1], vec![2, 0], vec![1]]).unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn edges_are_rank_ordered() {
        let g = cycle(5);
        let edges: Vec<Edge> = g.edges().collect();
        assert_eq!(edges.len(), 5);
        assert!(edges.windows(2).all(|w| edge_rank_less(w[0], w[1])));
    }
}
