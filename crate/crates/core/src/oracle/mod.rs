//! Desk-scale ground truth for the orientation structures.
//!
//! Everything here favors obviousness over speed: exhaustive subset
//! enumeration for arboricity, an augmenting-path flow for the optimal
//! max-out-degree, a linear-scan replica of the neighbor heap, naive
//! replicas of both update strategies, and an exhaustive adversarial
//! search over short update sequences. These are the independent checks
//! the fast structures are tested against.

mod flow;
mod reference_heap;
mod replica;
mod search;

pub use flow::min_max_outdegree;
pub use reference_heap::ReferenceHeap;
pub use replica::{NaiveReplica, Replica, ReplayOutcome, SpectrumReplica};
pub use search::{adversarial_search, SearchOutcome, UpdateOp, Witness};

use thiserror::Error;

use crate::Vertex;

/// Default vertex-count ceiling for subset-enumeration oracles.
pub const DEFAULT_SUBSET_LIMIT: usize = 16;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("graph with {n} vertices exceeds the exhaustive limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid oracle parameters: {0}")]
    InvalidParams(String),
}

/// Immutable edge list for the static oracles.
#[derive(Clone, Debug)]
pub struct StaticGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl StaticGraph {
    /// Builds a simple graph; edges must connect distinct vertices below `n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            assert!(u != v, "self loop {u}");
            assert!((u as usize) < n && (v as usize) < n, "vertex out of range");
        }
        StaticGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }
}

/// Exact arboricity by maximizing `ceil(|E(U)| / (|U| - 1))` over all vertex
/// subsets `U` with at least two vertices. An edgeless graph has arboricity 1.
///
/// Exhaustive in `2^n`; refuses graphs larger than `limit` vertices.
pub fn arboricity_exact(g: &StaticGraph, limit: usize) -> Result<u32, OracleError> {
    if g.n > limit {
        return Err(OracleError::TooLarge { n: g.n, limit });
    }
    if g.edges.is_empty() {
        return Ok(1);
    }
    let edge_masks: Vec<u32> = g
        .edges
        .iter()
        .map(|&(u, v)| (1u32 << u) | (1u32 << v))
        .collect();
    let mut best = 1u32;
    for subset in 1u32..(1u32 << g.n) {
        let size = subset.count_ones();
        if size < 2 {
            continue;
        }
        let inside = edge_masks
            .iter()
            .filter(|&&m| subset & m == m)
            .count() as u32;
        best = best.max(inside.div_ceil(size - 1));
    }
    Ok(best)
}

/// The maintained-degree guarantee: `beta * alpha + ceil(log_beta n)`.
///
/// Exact for the parameters exercised in the tests (`beta` and `beta * alpha`
/// representable in binary floating point).
pub fn theorem2_bound(alpha: u32, beta: f64, n: usize) -> f64 {
    beta * f64::from(alpha) + f64::from(ceil_log(beta, n))
}

/// Smallest `k >= 0` with `beta^k >= n`. Requires `beta > 1`.
pub fn ceil_log(beta: f64, n: usize) -> u32 {
    assert!(beta > 1.0, "log base must exceed 1");
    let target = n as f64;
    let mut power = 1.0f64;
    let mut k = 0u32;
    while power < target {
        power *= beta;
        k += 1;
    }
    k
}
