//! Counted, call-scoped access to a [`Graph`].
//!
//! A [`Prober`] discovers a vertex's neighbor list by issuing incidence-list
//! queries `neighbor(v, 1), neighbor(v, 2), ...` until the list is exhausted or
//! `delta_max` probes were made. A list already discovered during the same call
//! is remembered and costs nothing further.

use rustc_hash::FxHashSet;

use crate::error::{LssgError, Result};
use crate::graph::{Graph, QueryCounter, Vertex};

pub struct Prober<'g> {
    graph: &'g Graph,
    counter: QueryCounter,
    discovered: FxHashSet<Vertex>,
}

impl<'g> Prober<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Prober {
            graph,
            counter: QueryCounter::new(),
            discovered: FxHashSet::default(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn counter(&self) -> QueryCounter {
        self.counter
    }

    pub fn queries(&self) -> u64 {
        self.counter.count()
    }

    /// Number of distinct vertices whose lists were discovered.
    pub fn vertices_probed(&self) -> usize {
        self.discovered.len()
    }

    /// Vertices whose incidence lists were read, ascending.
    pub fn probed_set(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.discovered.iter().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn neighbors(&mut self, v: Vertex) -> Result<&'g [Vertex]> {
        if v >= self.graph.n() {
            return Err(LssgError::InvalidInput(format!(
                "vertex {v} out of range (n = {})",
                self.graph.n()
            )));
        }
        if self.discovered.insert(v) {
            let mut seen = 0;
            for i in 1..=self.graph.delta_max() {
                match self.graph.neighbor(v, i, &mut self.counter)? {
                    Some(_) => seen += 1,
                    None => break,
                }
            }
            debug_assert_eq!(seen, self.graph.degree(v));
        }
        Ok(self.graph.adjacency(v))
    }

    /// BFS ball around `v` restricted to vertices accepted by `filter`.
    ///
    /// Returns `(vertex, distance)` pairs sorted by `(distance, id)`, holding the
    /// first `cap` entries of that order when a cap is given. Distances are
    /// measured inside the filtered subgraph. If `v` itself is rejected by the
    /// filter the ball is empty.
    pub fn ball(
        &mut self,
        v: Vertex,
        radius: usize,
        cap: Option<usize>,
        mut filter: impl FnMut(Vertex) -> bool,
    ) -> Result<Vec<(Vertex, usize)>> {
        let cap = cap.unwrap_or(usize::MAX);
        if cap == 0 {
            return Err(LssgError::InvalidInput("ball cap must be at least 1".into()));
        }
        if v >= self.graph.n() {
            return Err(LssgError::InvalidInput(format!("vertex {v} out of range")));
        }
        if !filter(v) {
            return Ok(Vec::new());
        }
        let mut seen = FxHashSet::default();
        seen.insert(v);
        let mut out = Vec::new();
        let mut level = vec![v];
        let mut depth = 0;
        loop {
            for &x in &level {
                out.push((x, depth));
                if out.len() == cap {
                    return Ok(out);
                }
            }
            if depth == radius {
                return Ok(out);
            }
            let mut next = Vec::new();
            for &x in &level {
                for &y in self.neighbors(x)? {
                    if !seen.contains(&y) && filter(y) {
                        seen.insert(y);
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                return Ok(out);
            }
            next.sort_unstable();
            level = next;
            depth += 1;
        }
    }
}
