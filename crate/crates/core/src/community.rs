//! Modularity and the two-phase Louvain method.
//!
//! For a partition `c` of a graph with total weight `m`,
//!
//! ```text
//! Q = 1/(2m) · Σ_{i,j} [ A(i,j) − k(i)·k(j) / 2m ] · [c(i) == c(j)]
//! ```
//!
//! summed over all ordered pairs, `i == j` included. Grouping by community this
//! is `Σ_c [ in(c) − tot(c)² / 2m ] / 2m` where `in(c)` is the ordered-pair
//! weight inside `c` and `tot(c)` the summed weighted degree of its members.
//!
//! Louvain alternates a local moving phase (greedy single-node moves to the
//! neighbouring community with the largest modularity gain) with aggregation
//! of communities into super-nodes, until a pass no longer improves `Q`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

/// A move or a pass counts as an improvement only above this gain.
pub const GAIN_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommunityError {
    #[error("graph has no edges (total weight is zero)")]
    EmptyGraph,
    #[error("partition covers {partition} nodes but the graph has {graph}")]
    SizeMismatch { partition: usize, graph: usize },
    #[error("unknown node index {0}")]
    UnknownNode(usize),
    #[error("unknown community {0}")]
    UnknownCommunity(usize),
    #[error("community ids are not a contiguous 0-based range without gaps")]
    InvalidAssignment,
}

pub type Result<T, E = CommunityError> = std::result::Result<T, E>;

/// Assignment of every node to a community id in `0..C`, no community empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Validates a dense assignment.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let count = assignment.iter().max().map_or(0, |&c| c + 1);
        let mut used = vec![false; count];
        for &c in &assignment {
            used[c] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(CommunityError::InvalidAssignment);
        }
        Ok(Self { assignment, count })
    }

    /// Relabels arbitrary labels to `0..C` in order of each community's
    /// smallest node index.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = BTreeMap::new();
        let assignment = labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Self {
            assignment,
            count: map.len(),
        }
    }

    /// Every node in its own community.
    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            count: n,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members of each community, in ascending node order.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (node, &c) in self.assignment.iter().enumerate() {
            out[c].push(node);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.count];
        for &c in &self.assignment {
            out[c] += 1;
        }
        out
    }
}

fn check_inputs(g: &Graph, len: usize) -> Result<()> {
    if len != g.node_count() {
        return Err(CommunityError::SizeMismatch {
            partition: len,
            graph: g.node_count(),
        });
    }
    if g.total_weight() <= 0.0 {
        return Err(CommunityError::EmptyGraph);
    }
    Ok(())
}

pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    check_inputs(g, p.len())?;
    Ok(modularity_of_labels(g, p.assignment()))
}

/// Modularity for arbitrary (not necessarily dense) labels. Requires `m > 0`
/// and one label per node.
pub(crate) fn modularity_of_labels(g: &Graph, labels: &[usize]) -> f64 {
    let two_m = 2.0 * g.total_weight();
    let mut inside: BTreeMap<usize, f64> = BTreeMap::new();
    let mut tot: BTreeMap<usize, f64> = BTreeMap::new();
    for i in 0..g.node_count() {
        let c = labels[i];
        *tot.entry(c).or_default() += g.weighted_degree(i);
        let internal: f64 = g
            .neighbors(i)
            .iter()
            .filter(|&&(j, _)| labels[j] == c)
            .map(|&(_, w)| w)
            .sum();
        *inside.entry(c).or_default() += internal;
    }
    tot.iter()
        .map(|(c, &t)| inside.get(c).copied().unwrap_or(0.0) - t * t / two_m)
        .sum::<f64>()
        / two_m
}

/// Community weight totals and the per-move gain formula shared by
/// [`modularity_gain`] and the local moving phase.
struct MoveState {
    labels: Vec<usize>,
    tot: Vec<f64>,
    m: f64,
}

impl MoveState {
    fn new(g: &Graph, labels: Vec<usize>) -> Self {
        let width = labels.iter().max().map_or(0, |&c| c + 1).max(g.node_count());
        let mut tot = vec![0.0; width];
        for (i, &c) in labels.iter().enumerate() {
            tot[c] += g.weighted_degree(i);
        }
        Self {
            labels,
            tot,
            m: g.total_weight(),
        }
    }

    /// Weight from `i` to each community among its neighbours, self-loop
    /// excluded, as `(community, weight)` sorted by community.
    fn links(&self, g: &Graph, i: usize) -> Vec<(usize, f64)> {
        let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
        for &(j, w) in g.neighbors(i) {
            if j != i {
                *acc.entry(self.labels[j]).or_default() += w;
            }
        }
        acc.into_iter().collect()
    }

    /// `Q(after) − Q(before)` for moving `i` from its community to `target`,
    /// given `w_target`/`w_own`, the link weights from `i` into those two
    /// communities (excluding `i` itself).
    fn gain(&self, g: &Graph, i: usize, target: usize, w_target: f64, w_own: f64) -> f64 {
        let own = self.labels[i];
        if target == own {
            return 0.0;
        }
        let k = g.weighted_degree(i);
        let tot_own = self.tot[own] - k;
        let tot_target = self.tot[target];
        ((w_target - w_own) - k * (tot_target - tot_own) / (2.0 * self.m)) / self.m
    }

    fn apply(&mut self, g: &Graph, i: usize, target: usize) {
        let k = g.weighted_degree(i);
        self.tot[self.labels[i]] -= k;
        self.tot[target] += k;
        self.labels[i] = target;
    }
}

/// Change in modularity when node `node` moves into community `target`.
pub fn modularity_gain(g: &Graph, p: &Partition, node: usize, target: usize) -> Result<f64> {
    check_inputs(g, p.len())?;
    if node >= g.node_count() {
        return Err(CommunityError::UnknownNode(node));
    }
    if target >= p.community_count() {
        return Err(CommunityError::UnknownCommunity(target));
    }
    let state = MoveState::new(g, p.assignment().to_vec());
    let links = state.links(g, node);
    let weight_to = |c: usize| {
        links
            .iter()
            .find(|&&(l, _)| l == c)
            .map_or(0.0, |&(_, w)| w)
    };
    let own = p.community_of(node);
    Ok(state.gain(g, node, target, weight_to(target), weight_to(own)))
}

/// Greedy local moving phase. Nodes are swept in index order; each moves to
/// the neighbouring community with the largest gain above [`GAIN_EPSILON`]
/// (lowest community id on ties). Sweeps repeat until one makes no move.
pub fn local_moving(g: &Graph, p: &Partition) -> Result<Partition> {
    check_inputs(g, p.len())?;
    let order: Vec<usize> = (0..g.node_count()).collect();
    let (labels, _) = sweep_until_stable(g, p.assignment().to_vec(), &order, &mut None);
    Ok(Partition::from_labels(&labels))
}

/// Returns the final labels and whether any node moved. When `trace` is
/// present the modularity after every accepted move is appended to it.
fn sweep_until_stable(
    g: &Graph,
    labels: Vec<usize>,
    order: &[usize],
    trace: &mut Option<&mut Vec<f64>>,
) -> (Vec<usize>, bool) {
    let mut state = MoveState::new(g, labels);
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &i in order {
            let links = state.links(g, i);
            let own = state.labels[i];
            let w_own = links
                .iter()
                .find(|&&(c, _)| c == own)
                .map_or(0.0, |&(_, w)| w);

            let mut best: Option<(usize, f64)> = None;
            for &(c, w) in &links {
                if c == own {
                    continue;
                }
                let gain = state.gain(g, i, c, w, w_own);
                if gain > GAIN_EPSILON && best.is_none_or(|(_, b)| gain > b) {
                    best = Some((c, gain));
                }
            }

            if let Some((target, _)) = best {
                state.apply(g, i, target);
                moved = true;
                if let Some(t) = trace.as_deref_mut() {
                    t.push(modularity_of_labels(g, &state.labels));
                }
            }
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    (state.labels, moved_any)
}

/// Collapses each community into one node. Cross-community weights are summed;
/// the self-loop of a community is the ordered-pair sum of its internal
/// weights, so the coarse graph keeps the same `m` and the same modularity.
/// Each coarse node takes the id of its smallest member.
pub fn aggregate(g: &Graph, p: &Partition) -> Result<Graph> {
    if p.len() != g.node_count() {
        return Err(CommunityError::SizeMismatch {
            partition: p.len(),
            graph: g.node_count(),
        });
    }
    let mut weights: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (i, j, w) in g.edges() {
        let (ci, cj) = (p.community_of(i), p.community_of(j));
        let key = (ci.min(cj), ci.max(cj));
        let contribution = if ci == cj && i != j { 2.0 * w } else { w };
        *weights.entry(key).or_default() += contribution;
    }
    let ids = p
        .communities()
        .iter()
        .map(|members| g.id(members[0]).to_string())
        .collect();
    let triples: Vec<_> = weights.into_iter().map(|((c, d), w)| (c, d, w)).collect();
    Ok(Graph::from_weighted(ids, &triples).expect("aggregated weights are positive and unique"))
}

#[derive(Debug, Clone, Default)]
pub struct LouvainConfig {
    /// Shuffle the sweep order of every pass with this seed. `None` sweeps in
    /// canonical node order.
    pub shuffle_seed: Option<u64>,
    /// Record the modularity after every accepted move.
    pub record_trace: bool,
}

#[derive(Debug, Clone)]
pub struct LouvainOutcome {
    /// Partition of the original nodes, communities numbered by smallest node.
    pub partition: Partition,
    pub modularity: f64,
    /// Outer passes that improved modularity.
    pub passes: usize,
    /// Modularity of the starting singleton partition followed by the value
    /// after each accepted move. Empty unless tracing was requested.
    pub trace: Vec<f64>,
}

pub fn louvain(g: &Graph) -> Result<(Partition, f64)> {
    let out = louvain_with(g, &LouvainConfig::default())?;
    Ok((out.partition, out.modularity))
}

pub fn louvain_with(g: &Graph, config: &LouvainConfig) -> Result<LouvainOutcome> {
    check_inputs(g, g.node_count())?;

    let mut trace = Vec::new();
    let mut membership: Vec<usize> = (0..g.node_count()).collect();
    let mut level = g.clone();
    let mut q = modularity_of_labels(g, &membership);
    if config.record_trace {
        trace.push(q);
    }
    let mut passes = 0;

    loop {
        let mut order: Vec<usize> = (0..level.node_count()).collect();
        if let Some(seed) = config.shuffle_seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(passes as u64));
            order.shuffle(&mut rng);
        }
        let mut sink = config.record_trace.then_some(&mut trace);
        let (labels, moved) =
            sweep_until_stable(&level, (0..level.node_count()).collect(), &order, &mut sink);
        if !moved {
            break;
        }
        let next_q = modularity_of_labels(&level, &labels);
        if next_q - q <= GAIN_EPSILON {
            break;
        }
        q = next_q;
        passes += 1;

        let coarse = Partition::from_labels(&labels);
        for c in membership.iter_mut() {
            *c = coarse.community_of(*c);
        }
        level = aggregate(&level, &coarse)?;
    }

    let partition = Partition::from_labels(&membership);
    let modularity = modularity_of_labels(g, partition.assignment());
    Ok(LouvainOutcome {
        partition,
        modularity,
        passes,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct evaluation of the double sum over ordered pairs.
    fn q_direct(g: &Graph, labels: &[usize]) -> f64 {
        let n = g.node_count();
        let two_m = 2.0 * g.total_weight();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if labels[i] == labels[j] {
                    s += g.weight(i, j) - g.weighted_degree(i) * g.weighted_degree(j) / two_m;
                }
            }
        }
        s / two_m
    }

    fn single_edge() -> Graph {
        Graph::from_indexed(2, &[(0, 1, 1.0)]).unwrap()
    }

    fn two_edges() -> Graph {
        Graph::from_indexed(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap()
    }

    fn two_triangles(bridge: bool) -> Graph {
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

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![0, 1, 1]).is_ok());
        assert_eq!(
            Partition::new(vec![0, 2]).unwrap_err(),
            CommunityError::InvalidAssignment
        );
        let p = Partition::from_labels(&[7, 3, 7, 9]);
        assert_eq!(p.assignment(), [0, 1, 0, 2]);
        assert_eq!(p.community_count(), 3);
        assert_eq!(p.sizes(), [2, 1, 1]);
    }

    #[test]
    fn modularity_examples() {
        let g = two_triangles(true);
        let one = Partition::new(vec![0; 6]).unwrap();
        assert!(modularity(&g, &one).unwrap().abs() < 1e-15);

        let q = modularity(&single_edge(), &Partition::singletons(2)).unwrap();
        assert!((q + 0.5).abs() < 1e-15);

        let q = modularity(&two_edges(), &Partition::new(vec![0, 0, 1, 1]).unwrap()).unwrap();
        assert!((q - 0.5).abs() < 1e-15);
    }

    #[test]
    fn modularity_errors() {
        let empty = Graph::from_indexed(2, &[]).unwrap();
        assert_eq!(
            modularity(&empty, &Partition::singletons(2)).unwrap_err(),
            CommunityError::EmptyGraph
        );
        assert!(matches!(
            modularity(&single_edge(), &Partition::singletons(3)),
            Err(CommunityError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn gain_examples() {
        let g = single_edge();
        let p = Partition::singletons(2);
        assert_eq!(modularity_gain(&g, &p, 0, 0).unwrap(), 0.0);
        assert!((modularity_gain(&g, &p, 0, 1).unwrap() - 0.5).abs() < 1e-12);

        let g = two_edges();
        let p = Partition::new(vec![0, 0, 1, 1]).unwrap();
        assert!(modularity_gain(&g, &p, 1, 1).unwrap() < 0.0);

        assert_eq!(
            modularity_gain(&g, &p, 9, 0).unwrap_err(),
            CommunityError::UnknownNode(9)
        );
        assert_eq!(
            modularity_gain(&g, &p, 0, 5).unwrap_err(),
            CommunityError::UnknownCommunity(5)
        );
    }

    #[test]
    fn gain_matches_recompute_with_self_loops() {
        let g = Graph::from_indexed(
            4,
            &[(0, 0, 2.0), (0, 1, 1.0), (1, 2, 3.0), (2, 3, 1.0), (3, 3, 4.0), (0, 3, 2.0)],
        )
        .unwrap();
        let p = Partition::new(vec![0, 0, 1, 1]).unwrap();
        for node in 0..4 {
            for target in 0..2 {
                let mut moved = p.assignment().to_vec();
                moved[node] = target;
                let expected = q_direct(&g, &moved) - q_direct(&g, p.assignment());
                let got = modularity_gain(&g, &p, node, target).unwrap();
                assert!((got - expected).abs() < 1e-12, "{node}->{target}: {got} vs {expected}");
            }
        }
    }

    #[test]
    fn local_moving_examples() {
        let p = local_moving(&single_edge(), &Partition::singletons(2)).unwrap();
        assert_eq!(p.community_count(), 1);

        let g = two_triangles(false);
        let optimum = Partition::new(vec![0, 0, 0, 1, 1, 1]).unwrap();
        assert_eq!(local_moving(&g, &optimum).unwrap(), optimum);

        let p = local_moving(&g, &Partition::singletons(6)).unwrap();
        assert_eq!(p, optimum);
        assert!((modularity(&g, &p).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn aggregate_examples() {
        let g = two_triangles(true);
        let same = aggregate(&g, &Partition::singletons(6)).unwrap();
        assert_eq!(same.node_count(), 6);
        assert_eq!(same.ids(), g.ids());
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(same.weight(i, j), g.weight(i, j));
            }
        }

        let merged = aggregate(&single_edge(), &Partition::new(vec![0, 0]).unwrap()).unwrap();
        assert_eq!(merged.node_count(), 1);
        assert_eq!(merged.self_loop(0), 2.0);
        assert_eq!(merged.total_weight(), 1.0);

        let tri = two_triangles(false);
        let coarse = aggregate(&tri, &Partition::new(vec![0, 0, 0, 1, 1, 1]).unwrap()).unwrap();
        assert_eq!(coarse.node_count(), 2);
        assert_eq!(coarse.self_loop(0), 6.0);
        assert_eq!(coarse.self_loop(1), 6.0);
        assert_eq!(coarse.weight(0, 1), 0.0);
        assert_eq!(coarse.total_weight(), 6.0);
    }

    #[test]
    fn louvain_examples() {
        let (p, q) = louvain(&single_edge()).unwrap();
        assert_eq!(p.community_count(), 1);
        assert!(q.abs() < 1e-12);

        let (p, q) = louvain(&two_triangles(false)).unwrap();
        assert_eq!(p.assignment(), [0, 0, 0, 1, 1, 1]);
        assert!((q - 0.5).abs() < 1e-12);

        let (p, _) = louvain(&two_triangles(true)).unwrap();
        assert_eq!(p.assignment(), [0, 0, 0, 1, 1, 1]);

        assert_eq!(
            louvain(&Graph::from_indexed(3, &[]).unwrap()).unwrap_err(),
            CommunityError::EmptyGraph
        );
    }

    #[test]
    fn shuffled_sweep_still_finds_triangles() {
        let config = LouvainConfig {
            shuffle_seed: Some(7),
            record_trace: true,
        };
        let out = louvain_with(&two_triangles(true), &config).unwrap();
        assert_eq!(out.partition.assignment(), [0, 0, 0, 1, 1, 1]);
        assert!(out.trace.windows(2).all(|w| w[1] >= w[0]));
    }
}
