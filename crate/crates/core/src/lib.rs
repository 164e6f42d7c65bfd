//! Fully dynamic graph orientation with provably low out-degree.
//!
//! The central object is an orientation of an undirected graph that is
//! maintained under edge insertions and deletions so that every vertex keeps
//! a small out-degree: at most `beta * alpha + ceil(log_beta n)` for any
//! `beta > 1`, where `alpha` is the arboricity of the current graph. Updates
//! re-orient ("flip") at most `Delta + 1` edges, where `Delta` is the maximum
//! out-degree seen during the run.
//!
//! Two maintenance strategies are provided:
//!
//! * [`OrientedGraph`] keeps every edge valid (the tail's out-degree never
//!   exceeds the head's by more than one) and scans the full out-list of the
//!   insertion tail.
//! * [`SpectrumGraph`] relaxes validity per block of its per-vertex edge
//!   lists and scans only a constant-size tail window per insertion step,
//!   trading scan work for the same degree bound.
//!
//! Both variants are backed by [`NeighborHeap`], a bucketed priority
//! structure over in-neighbors that supports constant-time key increments,
//! decrements, and a restricted max-report.
//!
//! The [`oracle`] module holds independent desk-scale ground truth (exact
//! arboricity, an exact min-max-out-degree via flow, naive replays of both
//! strategies, an exhaustive adversarial search). The [`apps`] module derives
//! maximal matching, adjacency queries, and dynamic matrix-vector products
//! from the orientation's flip events.

#![forbid(unsafe_code)]

pub mod apps;
mod graph;
pub mod neighbor_heap;
pub mod oracle;

pub use graph::{
    spectrum::{SpectrumConfig, SpectrumGraph},
    validate::{ValidationIssue, ValidationReport},
    DynamicOrientation, EdgeEvent, FaultPlan, GraphError, GraphView, Observer, ObserverId,
    OpCounters, OrientedGraph, UpdateStats,
};
pub use neighbor_heap::{HeapError, HeapHandle, NeighborHeap};

/// Vertex identifier. Vertices of an `n`-vertex graph are `0..n`.
pub type Vertex = u32;

/// Sentinel index for intrusive links ("no node").
pub const NIL: u32 = u32::MAX;
