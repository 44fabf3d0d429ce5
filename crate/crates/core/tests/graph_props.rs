mod common;

use std::collections::HashSet;

use coauthnet::corpus::EdgeRecord;
use coauthnet::Graph;
use proptest::prelude::*;

use common::bfs_all_pairs;

fn edge_list() -> impl Strategy<Value = (usize, Vec<(usize, usize, u32)>)> {
    (2usize..30).prop_flat_map(|n| {
        let pairs = prop::collection::btree_map((0..n, 0..n), 1u32..4, 0..(2 * n));
        (Just(n), pairs).prop_map(|(n, map)| {
            let mut seen = HashSet::new();
            let edges = map
                .into_iter()
                .filter(|&((i, j), _)| i != j && seen.insert((i.min(j), i.max(j))))
                .map(|((i, j), w)| (i, j, w))
                .collect();
            (n, edges)
        })
    })
}

fn records(edges: &[(usize, usize, u32)], names: impl Fn(usize) -> String) -> Vec<EdgeRecord> {
    edges
        .iter()
        .map(|&(i, j, w)| {
            let (a, b) = (names(i), names(j));
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            EdgeRecord {
                a,
                b,
                weight: w,
                paper_ids: (0..w).map(|k| format!("p{k}")).collect(),
            }
        })
        .collect()
}

proptest! {
    #[test]
    fn handshake_identity((n, edges) in edge_list()) {
        let triples: Vec<_> = edges.iter().map(|&(i, j, w)| (i, j, f64::from(w))).collect();
        let g = Graph::from_indexed(n, &triples).unwrap();
        let sum_k: f64 = (0..n).map(|i| g.weighted_degree(i)).sum();
        prop_assert_eq!(sum_k, 2.0 * g.total_weight());
        for i in 0..n {
            prop_assert!(g.degree(i) <= n);
        }
    }

    #[test]
    fn components_form_a_partition((n, edges) in edge_list()) {
        let triples: Vec<_> = edges.iter().map(|&(i, j, w)| (i, j, f64::from(w))).collect();
        let g = Graph::from_indexed(n, &triples).unwrap();
        let comps = g.connected_components();
        let mut owner = vec![usize::MAX; n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                prop_assert_eq!(owner[v], usize::MAX);
                owner[v] = c;
            }
            let reach = g.hop_distances(members[0]);
            prop_assert!(members.iter().all(|&v| reach[v].is_some()));
        }
        prop_assert!(owner.iter().all(|&o| o != usize::MAX));
        for (i, j, _) in g.edges() {
            prop_assert_eq!(owner[i], owner[j]);
        }
        let firsts: Vec<_> = comps.iter().map(|c| c[0]).collect();
        prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn relabeling_preserves_statistics((n, edges) in edge_list(), shift in 1usize..1000) {
        prop_assume!(!edges.is_empty());
        let g = Graph::from_edges(&records(&edges, |i| format!("a{i:03}"))).unwrap();
        // A bijection that also changes the lexicographic order.
        let h = Graph::from_edges(&records(&edges, |i| format!("z{:04}", (n - i) * 1000 + shift))).unwrap();

        prop_assert_eq!(g.total_weight(), h.total_weight());
        let degrees = |g: &Graph| {
            let mut d: Vec<_> = (0..g.node_count()).map(|i| g.degree(i)).collect();
            d.sort_unstable();
            d
        };
        prop_assert_eq!(degrees(&g), degrees(&h));
        prop_assert_eq!(g.connected_components().len(), h.connected_components().len());
        prop_assert_eq!(g.mean_distance().unwrap(), h.mean_distance().unwrap());
    }

    #[test]
    fn mean_distance_matches_bfs_oracle((n, edges) in edge_list()) {
        let triples: Vec<_> = edges.iter().map(|&(i, j, w)| (i, j, f64::from(w))).collect();
        let g = Graph::from_indexed(n, &triples).unwrap();
        let (total, pairs) = bfs_all_pairs(&g);
        match g.mean_distance() {
            Ok(d) => prop_assert_eq!(d, total as f64 / pairs as f64),
            Err(_) => prop_assert_eq!(pairs, 0),
        }
    }
}

#[test]
fn unit_weights_without_loops_have_k_equal_degree() {
    let g = Graph::from_indexed(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap();
    for i in 0..4 {
        assert_eq!(g.weighted_degree(i), g.degree(i) as f64);
    }
}
