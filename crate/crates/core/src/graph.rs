//! Weighted undirected graph.
//!
//! Weights are stored as a symmetric adjacency list. A self-loop `A(i,i)`
//! appears once in row `i`, so the weighted degree `k(i) = Σ_j A(i,j)` counts
//! it once and the total weight is `m = ½ Σ_i k(i)`. Self-loops only arise in
//! graphs produced by community aggregation.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::corpus::EdgeRecord;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("self-edge on node `{0}`")]
    SelfEdge(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicatePair(String, String),
    #[error("edge weight {0} is not a positive finite number")]
    BadWeight(f64),
    #[error("node index {0} out of bounds")]
    IndexOutOfBounds(usize),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("no pair of distinct nodes is connected; the statistic is undefined")]
    NoConnectedPair,
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

/// Degree quantities of one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeMetrics {
    /// Number of incident edges; a self-loop counts once.
    pub degree: usize,
    /// Sum of incident weights, `k(i) = Σ_j A(i,j)`.
    pub weighted_degree: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// Row `i` holds `(j, A(i,j))`, sorted by `j`.
    adj: Vec<Vec<(usize, f64)>>,
    strength: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    /// Builds a co-authorship graph. Only nodes incident to an edge are
    /// present, ordered lexicographically by id.
    pub fn from_edges(edges: &[EdgeRecord]) -> Result<Self> {
        let mut ids: Vec<&str> = edges
            .iter()
            .flat_map(|e| [e.a.as_str(), e.b.as_str()])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut triples = Vec::with_capacity(edges.len());
        for e in edges {
            if e.a == e.b {
                return Err(GraphError::SelfEdge(e.a.clone()));
            }
            triples.push((index[e.a.as_str()], index[e.b.as_str()], f64::from(e.weight)));
        }
        Self::from_triples(ids.into_iter().map(String::from).collect(), &triples, false)
    }

    /// Builds a graph over `ids` (kept in the given order) from index
    /// triples `(i, j, A(i,j))`. Self-loops are allowed; each unordered pair may
    /// appear once.
    pub fn from_weighted(ids: Vec<String>, edges: &[(usize, usize, f64)]) -> Result<Self> {
        Self::from_triples(ids, edges, true)
    }

    /// Graph over nodes named `"0"`, `"1"`, ... `n-1`.
    pub fn from_indexed(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        Self::from_weighted((0..n).map(|i| i.to_string()).collect(), edges)
    }

    fn from_triples(ids: Vec<String>, edges: &[(usize, usize, f64)], allow_loops: bool) -> Result<Self> {
        let n = ids.len();
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(GraphError::IndexOutOfBounds(i.max(j)));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(GraphError::BadWeight(w));
            }
            if i == j && !allow_loops {
                return Err(GraphError::SelfEdge(ids[i].clone()));
            }
            adj[i].push((j, w));
            if i != j {
                adj[j].push((i, w));
            }
        }
        for (i, row) in adj.iter_mut().enumerate() {
            row.sort_unstable_by_key(|&(j, _)| j);
            if let Some(pair) = row.windows(2).find(|p| p[0].0 == p[1].0) {
                let j = pair[0].0;
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                return Err(GraphError::DuplicatePair(ids[a].clone(), ids[b].clone()));
            }
        }

        let strength: Vec<f64> = adj.iter().map(|row| row.iter().map(|&(_, w)| w).sum()).collect();
        let total_weight = strength.iter().sum::<f64>() / 2.0;
        let index = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        Ok(Self {
            ids,
            index,
            adj,
            strength,
            total_weight,
        })
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Number of stored edges, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().filter(|&&(j, _)| j >= i).count())
            .sum()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// `m = ½ Σ_{i,j} A(i,j)`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// `(j, A(i,j))` for every `j` with a positive weight, sorted by `j`.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adj[i]
            .binary_search_by_key(&j, |&(n, _)| n)
            .map_or(0.0, |pos| self.adj[i][pos].1)
    }

    pub fn self_loop(&self, i: usize) -> f64 {
        self.weight(i, i)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn weighted_degree(&self, i: usize) -> f64 {
        self.strength[i]
    }

    /// Every stored edge once, as `(i, j, w)` with `i <= j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .filter(move |&&(j, _)| j >= i)
                .map(move |&(j, w)| (i, j, w))
        })
    }

    pub fn node_metrics(&self, id: &str) -> Result<NodeMetrics> {
        let i = self
            .index_of(id)
            .ok_or_else(|| GraphError::UnknownNode(id.to_string()))?;
        Ok(self.metrics_at(i))
    }

    pub fn metrics_at(&self, i: usize) -> NodeMetrics {
        NodeMetrics {
            degree: self.degree(i),
            weighted_degree: self.weighted_degree(i),
        }
    }

    /// Maximal connected node sets, each sorted, listed in order of their
    /// smallest node index.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        component.push(v);
                        queue.push_back(v);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Breadth-first hop counts from `source`; unreachable nodes are `None`.
    pub fn hop_distances(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &(v, _) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Hop counts from `source` keyed by node id; unreachable nodes are absent.
    pub fn shortest_path_lengths(&self, source: &str) -> Result<HashMap<String, u32>> {
        let s = self
            .index_of(source)
            .ok_or_else(|| GraphError::UnknownNode(source.to_string()))?;
        Ok(self
            .hop_distances(s)
            .into_iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (self.ids[i].clone(), d)))
            .collect())
    }

    /// Average hop count over unordered pairs of distinct nodes that lie in
    /// the same component. Weights are ignored.
    pub fn mean_distance(&self) -> Result<f64> {
        let mut total: u64 = 0;
        let mut pairs: u64 = 0;
        for s in 0..self.node_count() {
            for d in self.hop_distances(s).into_iter().skip(s + 1).flatten() {
                total += u64::from(d);
                pairs += 1;
            }
        }
        if pairs == 0 {
            return Err(GraphError::NoConnectedPair);
        }
        Ok(total as f64 / pairs as f64)
    }
}
