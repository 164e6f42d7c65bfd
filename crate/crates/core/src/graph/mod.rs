//! Shared plumbing for the two orientation strategies: the adjacency arena,
//! per-vertex neighbor heaps, the degree histogram, flip-event dispatch, and
//! update statistics.

pub(crate) mod core;
pub(crate) mod naive;
pub(crate) mod spectrum;
pub(crate) mod validate;

use std::time::Duration;

use thiserror::Error;

use crate::Vertex;

pub use self::core::GraphView;
pub use self::naive::OrientedGraph;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graphs need at least one vertex")]
    InvalidSize,
    #[error("self loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} out of range")]
    UnknownVertex(Vertex),
    #[error("edge {{{0}, {1}}} is already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {{{0}, {1}}} is not present")]
    NoSuchEdge(Vertex, Vertex),
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
}

/// Orientation change notifications, fired once the structure is consistent
/// for the affected edge.
///
/// A re-orientation inside an update surfaces as a single `Flipped` event
/// (never as a remove/add pair), so subscribers can maintain per-direction
/// state in O(1) per event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeEvent {
    /// A new edge entered the graph, oriented `from -> to`.
    Added { from: Vertex, to: Vertex },
    /// An edge left the graph; it was oriented `from -> to`.
    Removed { from: Vertex, to: Vertex },
    /// An existing edge is now oriented `from -> to` (previously `to -> from`).
    Flipped { from: Vertex, to: Vertex },
}

/// Subscriber callback. Receives a read-only view of the graph mid-update;
/// the view is consistent for the edge named in the event.
pub type Observer = Box<dyn FnMut(GraphView<'_>, EdgeEvent)>;

/// Registration token returned by [`DynamicOrientation::register_observer`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObserverId(pub(crate) usize);

#[derive(Default)]
pub(crate) struct ObserverRegistry {
    subs: Vec<Observer>,
}

impl ObserverRegistry {
    pub(crate) fn register(&mut self, observer: Observer) -> ObserverId {
        self.subs.push(observer);
        ObserverId(self.subs.len() - 1)
    }
}

impl std::fmt::Debug for ObserverRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ObserverRegistry({} subscribers)", self.subs.len())
    }
}

pub(crate) fn emit(
    observers: &mut ObserverRegistry,
    core: &core::GraphCore,
    event: EdgeEvent,
) {
    for sub in observers.subs.iter_mut() {
        sub(GraphView::new(core), event);
    }
}

/// Work counters accumulated inside a single update.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Adjacency-list entries examined by violation scans.
    pub list_entries_examined: u64,
    /// Heap operations issued (inserts, deletes, key and center moves).
    pub heap_updates: u64,
    /// Ordered-list splices (replacements, rotations, repositions).
    pub list_splices: u64,
}

/// Outcome of one `insert_edge` / `delete_edge` call.
#[derive(Clone, Copy, Debug, Default)]
pub struct UpdateStats {
    /// Edges re-oriented by this update.
    pub flips: u32,
    /// Times the update routine entered its main step (1 when no flip
    /// happened; always `flips + 1`).
    pub recursion_depth: u32,
    /// Maximum out-degree over the whole graph once the update settled.
    pub max_out_degree_after: u32,
    /// Wall time of the update.
    pub elapsed: Duration,
    /// Instrumentation counters.
    pub work: OpCounters,
}

/// Seeded-fault switches for the mutation-detection suite. All off in normal
/// operation; each switch disables one load-bearing step of an update
/// algorithm so tests can confirm the validators catch the damage.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FaultPlan {
    /// Skip the violated-edge scan on insertion (never flip).
    pub insert_skip_scan: bool,
    /// Skip the deferred key increments and the center raise on insertion.
    pub insert_skip_key_fixup: bool,
    /// Ignore the max-report on deletion (never flip).
    pub delete_skip_flip: bool,
    /// Skip the deferred key decrements on deletion.
    pub delete_skip_key_fixup: bool,
    /// Skip the scanned-window rotation after a flip-free insertion.
    pub spectrum_skip_rotation: bool,
    /// Scan the window from the front of the list instead of the back.
    pub spectrum_scan_front: bool,
    /// Append the replacement edge instead of splicing it into the removed
    /// edge's list position on deletion flips.
    pub spectrum_delete_skip_replace: bool,
}

/// Common mutation surface of both orientation strategies.
pub trait DynamicOrientation {
    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError>;
    fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError>;
    fn register_observer(&mut self, observer: Observer) -> ObserverId;
    fn view(&self) -> GraphView<'_>;
}

/// Orientation rule for a fresh edge: the endpoint with the smaller
/// out-degree becomes the tail; ties break toward the smaller id.
pub(crate) fn choose_tail(deg_u: u32, deg_v: u32, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if deg_u < deg_v || (deg_u == deg_v && u < v) {
        (u, v)
    } else {
        (v, u)
    }
}
