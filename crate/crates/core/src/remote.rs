//! Sparse spanner on the remote vertices via exponential shifts.
//!
//! Each remote vertex `u` draws `r_u ~ Exp(beta)`. A remote vertex `v` looks at
//! every remote `u` within `h` hops inside the remote subgraph, computes the
//! shifted value `m_u(v) = r_u - d(u, v)` and keeps the edge towards `u`'s
//! first hop `n_u(v)` whenever `m_u(v)` is within 1 of the maximum shifted value
//! (its own `r_v` included). Edges with exactly one remote endpoint are always
//! kept.

use std::collections::BTreeSet;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{LssgError, Result};
use crate::graph::{Edge, Vertex};
use crate::partition::{CenterInfo, Local};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnEntry {
    pub source: Vertex,
    /// Hop distance inside the remote subgraph.
    pub dist: usize,
    pub radius: f64,
    /// `radius - dist`.
    pub shifted: f64,
    /// Smallest-id neighbor of the viewing vertex on a shortest path to `source`.
    pub next_hop: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnLocalView {
    pub vertex: Vertex,
    /// Sorted by `(dist, source)`; the first entry is the vertex itself.
    pub entries: Vec<EnEntry>,
}

impl EnLocalView {
    /// `max_w m_w(v) - 1`.
    pub fn threshold(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.shifted)
            .fold(f64::NEG_INFINITY, f64::max)
            - 1.0
    }

    /// The edge set `C(v)`.
    pub fn edges(&self) -> BTreeSet<Edge> {
        let t = self.threshold();
        self.entries
            .iter()
            .filter(|e| e.shifted >= t)
            .filter_map(|e| e.next_hop)
            .map(|hop| Edge::new(self.vertex, hop))
            .collect()
    }

    pub fn keeps(&self, e: Edge) -> bool {
        let t = self.threshold();
        self.entries
            .iter()
            .any(|x| x.shifted >= t && x.next_hop.is_some_and(|hop| Edge::new(self.vertex, hop) == e))
    }
}

/// Edges with exactly one remote endpoint are always kept.
pub fn boundary_answer(u: &CenterInfo, v: &CenterInfo) -> bool {
    u.is_remote() != v.is_remote()
}

impl<'a> Local<'a> {
    pub fn en_view(&mut self, v: Vertex) -> Result<Rc<EnLocalView>> {
        if let Some(view) = self.en_views.get(&v) {
            return Ok(view.clone());
        }
        if !self.is_remote(v)? {
            return Err(LssgError::InvalidInput(format!("vertex {v} is not remote")));
        }
        let h = self.params.h;
        let mut dist: FxHashMap<Vertex, usize> = FxHashMap::default();
        let mut hop: FxHashMap<Vertex, Vertex> = FxHashMap::default();
        dist.insert(v, 0);
        let mut order = vec![v];
        let mut level = vec![v];
        for d in 0..h {
            let mut next = Vec::new();
            for &x in &level {
                let via = if d == 0 { None } else { Some(hop[&x]) };
                for &y in self.neighbors(x)? {
                    let candidate = via.unwrap_or(y);
                    match dist.get(&y) {
                        None => {
                            if !self.is_remote(y)? {
                                continue;
                            }
                            dist.insert(y, d + 1);
                            hop.insert(y, candidate);
                            next.push(y);
                        }
                        Some(&dy) if dy == d + 1 => {
                            let h = hop.get_mut(&y).unwrap();
                            *h = (*h).min(candidate);
                        }
                        Some(_) => {}
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            order.extend_from_slice(&next);
            level = next;
        }
        let entries = order
            .into_iter()
            .map(|u| {
                let du = dist[&u];
                let radius = self.src.exp_radius(self.params, u);
                EnEntry {
                    source: u,
                    dist: du,
                    radius,
                    shifted: radius - du as f64,
                    next_hop: hop.get(&u).copied(),
                }
            })
            .collect();
        let view = Rc::new(EnLocalView { vertex: v, entries });
        self.en_views.insert(v, view.clone());
        Ok(view)
    }

    pub fn en_edges(&mut self, v: Vertex) -> Result<BTreeSet<Edge>> {
        Ok(self.en_view(v)?.edges())
    }

    /// Whether `{u, v}` lies in `C(u) ∪ C(v)`.
    pub fn en_answer(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let e = Edge::new(u, v);
        if !self.neighbors(u)?.contains(&v) {
            return Err(LssgError::InvalidInput(format!("{e} is not an edge")));
        }
        let vu = self.en_view(u)?;
        if vu.keeps(e) {
            return Ok(true);
        }
        Ok(self.en_view(v)?.keeps(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::params::{derive_params, ParamConfig, Params};
    use crate::partition::CenterStatus;
    use crate::randomness::{Fixture, RandomSource, Seed};

    fn no_centers(g: &Graph, radii: &[(Vertex, f64)], h: usize) -> (RandomSource, Params) {
        let src = RandomSource::with_fixture(
            Seed::from_u64(1),
            Fixture::default().with_centers([]).with_radii(radii.iter().copied()),
        );
        let cfg = ParamConfig {
            ell: Some(h),
            ..ParamConfig::default()
        };
        let params = derive_params(g.n().max(2), g.delta_max(), &cfg, &src).unwrap();
        (src, params)
    }

    #[test]
    fn isolated_remote_vertex() {
        let g = Graph::from_edges(2, 2, &[]).unwrap();
        let (src, params) = no_centers(&g, &[(0, 0.3)], 2);
        let mut local = Local::new(&g, &src, &params);
        let view = local.en_view(0).unwrap();
        assert_eq!(view.entries.len(), 1);
        let e = view.entries[0];
        assert_eq!((e.source, e.dist, e.radius, e.shifted, e.next_hop), (0, 0, 0.3, 0.3, None));
        assert!(local.en_edges(0).unwrap().is_empty());
    }

    #[test]
    fn two_vertex_threshold_rule() {
        // r_u = 0.9, r_v = 0.1: C(v) = {{v,u}}, C(u) = {}.
        let g = Graph::from_edges(2, 2, &[Edge::new(0, 1)]).unwrap();
        let (src, params) = no_centers(&g, &[(0, 0.9), (1, 0.1)], 2);
        let mut local = Local::new(&g, &src, &params);
        assert_eq!(local.en_view(1).unwrap().entries[1].dist, 1);
        assert_eq!(local.en_edges(1).unwrap(), BTreeSet::from([Edge::new(0, 1)]));
        assert!(local.en_edges(0).unwrap().is_empty());
        assert!(local.en_answer(0, 1).unwrap());
    }

    #[test]
    fn next_hop_on_path() {
        let g = Graph::from_edges(3, 2, &[Edge::new(0, 1), Edge::new(1, 2)]).unwrap();
        let (src, params) = no_centers(&g, &[], 2);
        let mut local = Local::new(&g, &src, &params);
        let view = local.en_view(0).unwrap();
        let to2 = view.entries.iter().find(|e| e.source == 2).unwrap();
        assert_eq!((to2.dist, to2.next_hop), (2, Some(1)));
    }

    #[test]
    fn next_hop_takes_min_id_on_ties() {
        // 4-cycle 0-1-3-2-0: from 0 both 1 and 2 reach 3 in two hops.
        let g = Graph::from_edges(4, 2, &[Edge::new(0, 1), Edge::new(1, 3), Edge::new(2, 3), Edge::new(0, 2)]).unwrap();
        let (src, params) = no_centers(&g, &[], 2);
        let mut local = Local::new(&g, &src, &params);
        let view = local.en_view(0).unwrap();
        let to3 = view.entries.iter().find(|e| e.source == 3).unwrap();
        assert_eq!(to3.next_hop, Some(1));
    }

    #[test]
    fn equal_radii_on_path_keep_both_sides() {
        let edges: Vec<Edge> = (1..5).map(|i| Edge::new(i - 1, i)).collect();
        let g = Graph::from_edges(5, 2, &edges).unwrap();
        let radii: Vec<(Vertex, f64)> = (0..5).map(|v| (v, 0.5)).collect();
        let (src, params) = no_centers(&g, &radii, 3);
        let mut local = Local::new(&g, &src, &params);
        // Threshold is 0.5 - 1; neighbors at distance 1 reach exactly -0.5.
        assert_eq!(local.en_edges(2).unwrap(), BTreeSet::from([Edge::new(1, 2), Edge::new(2, 3)]));
        assert_eq!(local.en_edges(0).unwrap(), BTreeSet::from([Edge::new(0, 1)]));
    }

    #[test]
    fn view_rejects_non_remote() {
        let g = Graph::from_edges(3, 2, &[Edge::new(0, 1), Edge::new(1, 2)]).unwrap();
        let src = RandomSource::with_fixture(Seed::from_u64(1), Fixture::default().with_centers([0]));
        let cfg = ParamConfig {
            ell: Some(1),
            ..ParamConfig::default()
        };
        let params = derive_params(3, 2, &cfg, &src).unwrap();
        let mut local = Local::new(&g, &src, &params);
        assert!(local.en_view(1).is_err());
        assert!(local.en_view(2).is_ok());
        assert!(local.en_answer(1, 2).is_err());
    }

    #[test]
    fn boundary_rule() {
        let remote = CenterInfo {
            vertex: 0,
            status: CenterStatus::Remote,
        };
        let near = CenterInfo {
            vertex: 1,
            status: CenterStatus::Assigned { center: 1, dist: 0 },
        };
        assert!(boundary_answer(&remote, &near));
        assert!(!boundary_answer(&remote, &remote));
        assert!(!boundary_answer(&near, &near));
    }
}
