//! Force-directed spatialization.
//!
//! Connected nodes attract with a force linear in their distance,
//! `F_a = k_a · d`, and every pair of nodes repels with
//! `F_r = k_r · (deg(n1) + 1)(deg(n2) + 1) / d`, using the unweighted degree.
//! Positions are updated synchronously with a fixed step and a per-node
//! displacement cap, so a run is fully determined by the graph and the
//! parameters.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Separation used in place of a zero distance between coincident nodes.
pub const JITTER: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("invalid layout parameter: {0}")]
    InvalidParams(&'static str),
    #[error("non-finite force on node {node} (`{id}`); the force coefficients are too large for the step size")]
    NonFinite { node: usize, id: String },
}

pub type Result<T, E = LayoutError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ZERO: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutParams {
    /// Attraction coefficient `k_a`.
    pub attraction: f64,
    /// Repulsion coefficient `k_r`.
    pub repulsion: f64,
    pub iterations: usize,
    /// Displacement per unit of net force.
    pub step: f64,
    /// Per-node, per-iteration cap on the displacement length.
    pub max_displacement: f64,
    pub seed: u64,
    /// Attraction is multiplied by `weight^weight_influence`; 0 ignores weights.
    pub weight_influence: f64,
    /// Accumulate forces on the rayon thread pool. Output does not depend on it.
    pub parallel: bool,
}

impl Default for LayoutParams {
    fn default() -> Self {
        Self {
            attraction: 1.0,
            repulsion: 1.0,
            iterations: 1000,
            step: 0.01,
            max_displacement: 1.0,
            seed: 42,
            weight_influence: 0.0,
            parallel: true,
        }
    }
}

impl LayoutParams {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.attraction) {
            return Err(LayoutError::InvalidParams("attraction must be > 0"));
        }
        if !positive(self.repulsion) {
            return Err(LayoutError::InvalidParams("repulsion must be > 0"));
        }
        if !positive(self.step) {
            return Err(LayoutError::InvalidParams("step must be > 0"));
        }
        if !positive(self.max_displacement) {
            return Err(LayoutError::InvalidParams("max_displacement must be > 0"));
        }
        if self.iterations == 0 {
            return Err(LayoutError::InvalidParams("iterations must be >= 1"));
        }
        if !self.weight_influence.is_finite() {
            return Err(LayoutError::InvalidParams("weight_influence must be finite"));
        }
        Ok(())
    }
}

/// Node positions, aligned with the graph's node order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutState {
    pub positions: Vec<Point>,
}

impl LayoutState {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn centroid(&self) -> Point {
        if self.positions.is_empty() {
            return Point::ZERO;
        }
        let sum = self.positions.iter().fold(Point::ZERO, |acc, &p| acc + p);
        sum * (1.0 / self.positions.len() as f64)
    }
}

/// Result of a full layout run.
#[derive(Debug, Clone)]
pub struct LayoutRun {
    pub state: LayoutState,
    /// Mean net-force magnitude at the final positions.
    pub mean_force: f64,
}

fn key(p: Point) -> (u64, u64) {
    (p.x.to_bits(), p.y.to_bits())
}

/// Seeded uniform placement in the unit disk with no two nodes coincident.
pub fn init_positions(g: &Graph, seed: u64) -> LayoutState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken = HashMap::with_capacity(g.node_count());
    let mut positions = Vec::with_capacity(g.node_count());
    while positions.len() < g.node_count() {
        let r = rng.gen::<f64>().sqrt();
        let theta = rng.gen::<f64>() * TAU;
        let p = Point::new(r * theta.cos(), r * theta.sin());
        if taken.insert(key(p), positions.len()).is_none() {
            positions.push(p);
        }
    }
    LayoutState { positions }
}

/// Deterministic unit direction for a coincident pair, antisymmetric in the
/// pair order.
fn jitter_direction(seed: u64, n1: usize, n2: usize) -> Point {
    let (lo, hi) = (n1.min(n2) as u64, n1.max(n2) as u64);
    let mixed = seed ^ lo.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ hi.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    let theta = ChaCha8Rng::seed_from_u64(mixed).gen::<f64>() * TAU;
    let dir = Point::new(theta.cos(), theta.sin());
    if n1 < n2 {
        dir
    } else {
        -dir
    }
}

/// Spring pull on `n1` toward `n2`, magnitude `k_a · d` (times
/// `A(n1,n2)^weight_influence`). Zero when the nodes coincide.
pub fn attraction_force(state: &LayoutState, g: &Graph, n1: usize, n2: usize, params: &LayoutParams) -> Point {
    let delta = state.positions[n2] - state.positions[n1];
    if delta == Point::ZERO {
        return Point::ZERO;
    }
    let scale = if params.weight_influence == 0.0 {
        1.0
    } else {
        g.weight(n1, n2).powf(params.weight_influence)
    };
    delta * (params.attraction * scale)
}

/// Push on `n1` away from `n2`, magnitude
/// `k_r · (deg(n1) + 1)(deg(n2) + 1) / d`. Coincident nodes are treated as
/// separated by [`JITTER`] along a seeded direction.
pub fn repulsion_force(state: &LayoutState, g: &Graph, n1: usize, n2: usize, params: &LayoutParams) -> Point {
    let mut delta = state.positions[n1] - state.positions[n2];
    if delta == Point::ZERO {
        delta = jitter_direction(params.seed, n1, n2) * JITTER;
    }
    let d2 = delta.x * delta.x + delta.y * delta.y;
    let degrees = (g.degree(n1) + 1) as f64 * (g.degree(n2) + 1) as f64;
    delta * (params.repulsion * degrees / d2)
}

fn net_force_on(state: &LayoutState, g: &Graph, i: usize, params: &LayoutParams) -> Point {
    let mut force = Point::ZERO;
    for j in 0..state.len() {
        if j != i {
            force += repulsion_force(state, g, i, j, params);
        }
    }
    for &(j, _) in g.neighbors(i) {
        if j != i {
            force += attraction_force(state, g, i, j, params);
        }
    }
    force
}

/// Net force on every node at the current positions.
pub fn net_forces(state: &LayoutState, g: &Graph, params: &LayoutParams) -> Result<Vec<Point>> {
    let forces: Vec<Point> = if params.parallel {
        (0..state.len())
            .into_par_iter()
            .map(|i| net_force_on(state, g, i, params))
            .collect()
    } else {
        (0..state.len()).map(|i| net_force_on(state, g, i, params)).collect()
    };
    if let Some(node) = forces.iter().position(|f| !f.is_finite()) {
        return Err(LayoutError::NonFinite {
            node,
            id: g.id(node).to_string(),
        });
    }
    Ok(forces)
}

/// Moves later duplicates of an occupied position by [`JITTER`].
fn separate_coincident(state: &mut LayoutState, seed: u64) {
    let mut taken: HashMap<(u64, u64), usize> = HashMap::with_capacity(state.len());
    for i in 0..state.len() {
        if let Some(&first) = taken.get(&key(state.positions[i])) {
            state.positions[i] += jitter_direction(seed, i, first) * JITTER;
        }
        taken.insert(key(state.positions[i]), i);
    }
}

/// One synchronous update: all forces come from the pre-step positions.
pub fn step(state: &LayoutState, g: &Graph, params: &LayoutParams) -> Result<LayoutState> {
    let mut current = state.clone();
    separate_coincident(&mut current, params.seed);
    let forces = net_forces(&current, g, params)?;
    for (p, f) in current.positions.iter_mut().zip(forces) {
        let mut disp = f * params.step;
        let len = disp.norm();
        if len > params.max_displacement {
            disp = disp * (params.max_displacement / len);
        }
        *p += disp;
    }
    Ok(current)
}

pub fn run_layout(g: &Graph, params: &LayoutParams) -> Result<LayoutRun> {
    params.validate()?;
    let mut state = init_positions(g, params.seed);
    for _ in 0..params.iterations {
        state = step(&state, g, params)?;
    }
    let forces = net_forces(&state, g, params)?;
    let mean_force = if forces.is_empty() {
        0.0
    } else {
        forces.iter().map(|f| f.norm()).sum::<f64>() / forces.len() as f64
    };
    Ok(LayoutRun { state, mean_force })
}
