//! Randomized invariants over small bounded-degree graphs.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use lssg::harness::metrics::{bridges, check_connectivity};
use lssg::harness::{reference_partition, reference_spanner, sweep, SweepOptions};
use lssg::partition::Local;
use lssg::probe::Prober;
use lssg::{derive_params, Edge, Graph, ParamConfig, RandomSource, Seed};

const DELTA: usize = 4;

/// Keeps the proposed pairs that fit under the degree bound, in proposal order.
fn bounded_graph(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let mut deg = vec![0usize; n];
    let mut edges = BTreeSet::new();
    for &(a, b) in pairs {
        let (a, b) = (a % n, b % n);
        if a == b || edges.contains(&Edge::new(a, b)) || deg[a] == DELTA || deg[b] == DELTA {
            continue;
        }
        deg[a] += 1;
        deg[b] += 1;
        edges.insert(Edge::new(a, b));
    }
    let edges: Vec<Edge> = edges.into_iter().collect();
    Graph::from_edges(n, DELTA, &edges).unwrap()
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (4usize..40).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |pairs| bounded_graph(n, &pairs))
    })
}

fn config_strategy() -> impl Strategy<Value = ParamConfig> {
    prop_oneof![
        Just(ParamConfig::default()),
        (1usize..5, 1usize..10, 0.0f64..0.5, 0.0f64..1.0)
            .prop_map(|(ell, k, q, p)| ParamConfig::default().with_overrides(Some(ell), Some(k), Some(q), Some(p))),
    ]
}

/// All-pairs hop distances by Floyd-Warshall.
fn apsp(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for e in g.edges() {
        d[e.lo][e.hi] = 1;
        d[e.hi][e.lo] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn ball_matches_all_pairs_distances(g in graph_strategy(), v in 0usize..40, r in 0usize..6) {
        let v = v % g.n();
        let d = apsp(&g);
        let mut expected: Vec<(usize, usize)> = (0..g.n()).filter(|&w| d[v][w] <= r).map(|w| (w, d[v][w])).collect();
        expected.sort_by_key(|&(w, dist)| (dist, w));
        let mut probe = Prober::new(&g);
        let got = probe.ball(v, r, None, |_| true).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn edge_rank_is_lexicographic(a in (0usize..50, 0usize..50), b in (0usize..50, 0usize..50)) {
        prop_assume!(a.0 != a.1 && b.0 != b.1);
        let (e, f) = (Edge::new(a.0, a.1), Edge::new(b.0, b.1));
        let key = |x: (usize, usize)| (x.0.min(x.1), x.0.max(x.1));
        prop_assert_eq!(e.cmp(&f), key(a).cmp(&key(b)));
        prop_assert_eq!(lssg::graph::edge_rank_less(e, f), key(a) < key(b));
    }

    #[test]
    fn seed_hex_round_trip(bytes in prop::array::uniform32(any::<u8>())) {
        let s = Seed::from_bytes(bytes);
        prop_assert_eq!(s.to_string().parse::<Seed>().unwrap(), s);
    }

    #[test]
    fn graph_file_round_trip(g in graph_strategy()) {
        prop_assert_eq!(Graph::parse(&g.to_canonical_string()).unwrap(), g);
    }

    #[test]
    fn local_clusters_partition_the_non_remote_set(g in graph_strategy(), cfg in config_strategy(), seed in any::<u64>()) {
        let src = RandomSource::new(Seed::from_u64(seed));
        let params = derive_params(g.n(), g.delta_max(), &cfg, &src).unwrap();
        let part = reference_partition(&g, &src, &params);
        let d = apsp(&g);
        let mut seen: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..g.n() {
            let mut local = Local::new(&g, &src, &params);
            let info = local.find_center(v).unwrap();
            prop_assert_eq!(info.center(), part.center_of[v]);
            let Some(c) = info.center() else { continue };
            // Nearest center within ell, smallest id among the nearest.
            prop_assert_eq!(info.dist(), Some(d[v][c]));
            prop_assert!(d[v][c] <= params.ell);
            prop_assert!(part.centers.iter().all(|&x| d[v][x] > d[v][c] || (d[v][x] == d[v][c] && x >= c)));
            // The parent chain descends one level at a time inside the cell.
            let mut x = v;
            let mut steps = 0;
            while let Some(p) = local.bfs_parent(x).unwrap() {
                prop_assert_eq!(local.find_center(p).unwrap().center(), Some(c));
                prop_assert_eq!(d[p][c] + 1, d[x][c]);
                x = p;
                steps += 1;
            }
            prop_assert_eq!((x, steps), (c, d[v][c]));

            let cl = local.cluster_of(v).unwrap();
            prop_assert!(cl.contains(v));
            prop_assert_eq!(Some(cl.root), part.cluster_root[v]);
            prop_assert_eq!(&cl.members, &part.cluster(v).unwrap().members);
            seen.entry(cl.root).or_insert_with(|| cl.members.clone());
            prop_assert_eq!(&seen[&cl.root], &cl.members);
        }
        let covered: usize = seen.values().map(Vec::len).sum();
        prop_assert_eq!(covered, g.n() - part.remote_count());
    }

    #[test]
    fn oracle_equals_reference(g in graph_strategy(), cfg in config_strategy(), seed in any::<u64>()) {
        let src = RandomSource::new(Seed::from_u64(seed));
        let params = derive_params(g.n(), g.delta_max(), &cfg, &src).unwrap();
        let reference = reference_spanner(&g, &src, &params);
        let swept = sweep(&g, &src, &params, SweepOptions::default()).unwrap();
        prop_assert_eq!(&swept.edges, &reference.edges);
    }

    #[test]
    fn spanner_is_a_connected_subgraph_keeping_bridges(g in graph_strategy(), cfg in config_strategy(), seed in any::<u64>()) {
        let src = RandomSource::new(Seed::from_u64(seed));
        let params = derive_params(g.n(), g.delta_max(), &cfg, &src).unwrap();
        let r = reference_spanner(&g, &src, &params);
        prop_assert!(r.edges.iter().all(|e| g.has_edge(e.lo, e.hi)));
        prop_assert!(r.parts.tree.is_subset(&r.edges));
        if !r.en_radius_violation {
            prop_assert!(check_connectivity(&g, &r.edges));
            prop_assert!(bridges(&g).is_subset(&r.edges));
        }
    }
}
