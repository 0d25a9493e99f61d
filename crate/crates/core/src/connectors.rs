//! Inter-cluster edge selection.
//!
//! An edge `e = {u, v}` between clusters `Q` (of `u`) and `W` (of `v`) lying in
//! different cells is kept iff one of three rules holds for `(A, B) = (Q, W)`
//! or `(A, B) = (W, Q)`:
//!
//! * (a) `A` is marked and `e` is the minimum-rank edge of `E(A, B)`;
//! * (b) no cell adjacent to `A` is marked and `e` is the minimum-rank edge of
//!   `E(A, Vor(B))`;
//! * (c) `A` participates in the cluster-of-clusters of some marked cluster
//!   `C`, `Vor(A)` has the minimum cell rank in `Vor(∂B) ∩ Vor(∂C)`, and `e` is
//!   the minimum-rank edge of `E(B, Vor(A))`.

use std::collections::BTreeMap;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{LssgError, Result};
use crate::graph::{Edge, Vertex};
use crate::partition::{Cluster, Local};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundaryEdge {
    pub edge: Edge,
    /// Endpoint inside the cluster.
    pub inner: Vertex,
    pub outer: Vertex,
    /// Center of `outer`'s cell.
    pub cell: Vertex,
}

/// Boundary of a cluster towards other (non-remote) cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyView {
    pub root: Vertex,
    pub cell: Vertex,
    /// Sorted by edge rank.
    pub boundary: Vec<BoundaryEdge>,
    /// Minimum-rank boundary edge into each adjacent cell, keyed by center.
    pub cell_min: BTreeMap<Vertex, BoundaryEdge>,
    /// Adjacent cells whose center is marked, ascending by center id.
    pub marked_cells: Vec<Vertex>,
}

impl AdjacencyView {
    pub fn adjacent_cells(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.cell_min.keys().copied()
    }

    pub fn is_adjacent_to_cell(&self, cell: Vertex) -> bool {
        self.cell_min.contains_key(&cell)
    }

    pub fn min_edge_to_cell(&self, cell: Vertex) -> Option<Edge> {
        self.cell_min.get(&cell).map(|b| b.edge)
    }

    /// Minimum-rank edge of `E(A, B)` for this cluster `A`.
    pub fn min_edge_to_cluster(&self, other: &Cluster) -> Option<Edge> {
        self.boundary
            .iter()
            .find(|b| b.cell == other.center && other.contains(b.outer))
            .map(|b| b.edge)
    }
}

/// Rule (a).
pub fn rule_marked(a: &Cluster, b: &Cluster, e: Edge, view_a: &AdjacencyView) -> bool {
    a.marked && view_a.min_edge_to_cluster(b) == Some(e)
}

/// Rule (b).
pub fn rule_no_marked_neighbor(_a: &Cluster, b: &Cluster, e: Edge, view_a: &AdjacencyView) -> bool {
    view_a.marked_cells.is_empty() && view_a.min_edge_to_cell(b.center) == Some(e)
}

/// One marked cell examined while evaluating rule (c).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndirectCandidate {
    pub marked_cell: Vertex,
    /// Root of the cluster `C` that `A` participates in.
    pub target_root: Vertex,
    /// `Vor(∂B) ∩ Vor(∂C)` by center id.
    pub common_cells: Vec<Vertex>,
    /// Center of the minimum-rank common cell.
    pub winner: Option<Vertex>,
    pub winner_rank: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndirectOutcome {
    pub holds: bool,
    /// Whether `e` is the minimum-rank edge of `E(B, Vor(A))`.
    pub edge_is_min_into_cell: bool,
    pub candidates: Vec<IndirectCandidate>,
}

impl<'a> Local<'a> {
    pub fn adjacency_view(&mut self, cluster: &Cluster) -> Result<Rc<AdjacencyView>> {
        if let Some(v) = self.views.get(&cluster.root) {
            return Ok(v.clone());
        }
        let mut boundary = Vec::new();
        for &x in &cluster.members {
            for &y in self.neighbors(x)? {
                if cluster.contains(y) {
                    continue;
                }
                let Some(cell) = self.find_center(y)?.center() else {
                    continue;
                };
                if cell == cluster.center {
                    continue;
                }
                boundary.push(BoundaryEdge {
                    edge: Edge::new(x, y),
                    inner: x,
                    outer: y,
                    cell,
                });
            }
        }
        boundary.sort_unstable_by_key(|b| b.edge);
        let mut cell_min = BTreeMap::new();
        for b in &boundary {
            cell_min.entry(b.cell).or_insert(*b);
        }
        let marked_cells = cell_min
            .keys()
            .copied()
            .filter(|&c| self.src.is_marked(self.params, c))
            .collect();
        let view = Rc::new(AdjacencyView {
            root: cluster.root,
            cell: cluster.center,
            boundary,
            cell_min,
            marked_cells,
        });
        self.views.insert(cluster.root, view.clone());
        Ok(view)
    }

    /// The unique cluster `C` inside `marked_cell` whose cluster-of-clusters `b`
    /// participates in: the cluster holding the far endpoint of `b`'s
    /// minimum-rank edge into that cell.
    pub fn participation_target(
        &mut self,
        view_b: &AdjacencyView,
        marked_cell: Vertex,
    ) -> Result<Rc<Cluster>> {
        let entry = view_b.cell_min.get(&marked_cell).ok_or_else(|| {
            LssgError::InvalidInput(format!(
                "cluster rooted at {} is not adjacent to cell {marked_cell}",
                view_b.root
            ))
        })?;
        self.cluster_of(entry.outer)
    }

    /// Rule (c).
    pub fn rule_indirect(
        &mut self,
        a: &Cluster,
        e: Edge,
        view_a: &AdjacencyView,
        view_b: &AdjacencyView,
    ) -> Result<IndirectOutcome> {
        let edge_is_min_into_cell = view_b.min_edge_to_cell(a.center) == Some(e);
        let mut out = IndirectOutcome {
            holds: false,
            edge_is_min_into_cell,
            candidates: Vec::new(),
        };
        if !edge_is_min_into_cell {
            return Ok(out);
        }
        for &marked_cell in &view_a.marked_cells {
            let target = self.participation_target(view_a, marked_cell)?;
            let view_c = self.adjacency_view(&target)?;
            let common: Vec<Vertex> = view_b
                .adjacent_cells()
                .filter(|&c| view_c.is_adjacent_to_cell(c))
                .collect();
            let winner = common.iter().map(|&c| self.src.cell_rank(c)).min();
            let holds = winner.is_some_and(|w| w.center == a.center);
            out.candidates.push(IndirectCandidate {
                marked_cell,
                target_root: target.root,
                common_cells: common,
                winner: winner.map(|w| w.center),
                winner_rank: winner.map(|w| format!("{:032x}", w.value)),
            });
            if holds {
                out.holds = true;
                break;
            }
        }
        Ok(out)
    }
}
