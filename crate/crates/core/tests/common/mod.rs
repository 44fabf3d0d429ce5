//! Independent oracles and generators shared by the integration tests.
//! Nothing here calls into the algorithms under test beyond reading raw
//! weights out of a `Graph`.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use coauthnet::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Dense symmetric weight matrix read edge by edge.
pub fn dense(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for (i, j, w) in g.edges() {
        a[i][j] = w;
        a[j][i] = w;
    }
    a
}

/// `Q = 1/2m Σ_{i,j} [A_ij − k_i k_j / 2m] δ(c_i, c_j)` over ordered pairs.
pub fn q_direct(a: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = a.len();
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                s += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    s / two_m
}

/// Every set partition of `n` elements as a restricted growth string.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let fresh = cur.iter().max().map_or(0, |m| m + 1);
        for c in 0..=fresh {
            cur.push(c);
            rec(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Best `(Q, labels)` over all partitions.
pub fn brute_force_max(a: &[Vec<f64>]) -> (f64, Vec<usize>) {
    all_partitions(a.len())
        .into_iter()
        .map(|p| (q_direct(a, &p), p))
        .fold((f64::NEG_INFINITY, Vec::new()), |best, cand| {
            if cand.0 > best.0 {
                cand
            } else {
                best
            }
        })
}

/// All-pairs BFS on an adjacency list rebuilt from the edge list; returns
/// (sum of hop counts over connected unordered pairs, number of such pairs).
pub fn bfs_all_pairs(g: &Graph) -> (u64, u64) {
    let n = g.node_count();
    let mut adj = vec![Vec::new(); n];
    for (i, j, _) in g.edges() {
        if i != j {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let (mut total, mut pairs) = (0u64, 0u64);
    for s in 0..n {
        let mut dist = vec![u64::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if dist[v] == u64::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        for &d in &dist[s + 1..] {
            if d != u64::MAX {
                total += d;
                pairs += 1;
            }
        }
    }
    (total, pairs)
}

/// Erdős–Rényi style graph with integer weights in `1..=max_w`, guaranteed
/// to contain at least one edge when `n >= 2`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_w: u32) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j, f64::from(rng.gen_range(1..=max_w))));
            }
        }
    }
    if edges.is_empty() && n >= 2 {
        edges.push((0, 1, 1.0));
    }
    Graph::from_indexed(n, &edges).unwrap()
}

pub fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let c = rng.gen_range(1..=n.max(1));
    (0..n).map(|_| rng.gen_range(0..c)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn two_triangles(bridge: bool) -> Graph {
    let mut e = vec![
        (0, 1, 1.0),
        (0, 2, 1.0),
        (1, 2, 1.0),
        (3, 4, 1.0),
        (3, 5, 1.0),
        (4, 5, 1.0),
    ];
    if bridge {
        e.push((2, 3, 1.0));
    }
    Graph::from_indexed(6, &e).unwrap()
}
