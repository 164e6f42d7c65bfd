//! Baseline strategy. Keeps every edge pointing from the lower out-degree
//! endpoint to within one of the higher: after each update, dg(u) <=
//! dg(v) + 1 holds across every directed edge (u, v). Insertions scan the
//! whole out-list of the growing vertex; deletions consult the neighbor heap
//! of the shrinking one.

use std::time::Instant;

use crate::{Vertex, NIL};

use super::core::{pair_key, GraphCore, GraphView};
use super::validate::{self, ValidationReport};
use super::{
    choose_tail, emit, DynamicOrientation, EdgeEvent, FaultPlan, GraphError, Observer,
    ObserverId, ObserverRegistry, UpdateStats,
};

/// Whether the current step handles the edge the caller named or a flipped
/// successor along the chain.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Outer,
    Chained,
}

pub struct OrientedGraph {
    pub(crate) core: GraphCore,
    observers: ObserverRegistry,
    faults: FaultPlan,
}

impl std::fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrientedGraph")
            .field("vertices", &self.core.vertex_count())
            .field("edges", &self.core.edges.len())
            .field("observers", &self.observers)
            .finish()
    }
}

impl Clone for OrientedGraph {
    /// Clones the structure only; observers stay with the original.
    fn clone(&self) -> Self {
        OrientedGraph {
            core: self.core.clone(),
            observers: ObserverRegistry::default(),
            faults: self.faults,
        }
    }
}

impl OrientedGraph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        Ok(OrientedGraph {
            core: GraphCore::new(n)?,
            observers: ObserverRegistry::default(),
            faults: FaultPlan::default(),
        })
    }

    #[doc(hidden)]
    pub fn set_fault_plan(&mut self, faults: FaultPlan) {
        self.faults = faults;
    }

    pub fn vertex_count(&self) -> u32 {
        self.core.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.core.edges.len()
    }

    pub fn out_degree(&self, u: Vertex) -> u32 {
        self.core.deg(u)
    }

    pub fn max_out_degree(&self) -> u32 {
        self.core.hist.max()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.core.edges.contains_key(&pair_key(u, v))
    }

    /// Inserts the undirected edge {u, v}; the endpoint with the smaller
    /// out-degree becomes the tail. Runs the flip chain until the edge
    /// invariant is restored.
    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError> {
        let started = Instant::now();
        self.core.check_pair(u, v)?;
        if self.core.edges.contains_key(&pair_key(u, v)) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let mut stats = UpdateStats::default();
        let (tail, head) = choose_tail(self.core.deg(u), self.core.deg(v), u, v);
        self.insert_chain(tail, head, &mut stats);
        stats.max_out_degree_after = self.core.hist.max();
        stats.elapsed = started.elapsed();
        Ok(stats)
    }

    /// Deletes the undirected edge {u, v}, wherever it currently points.
    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError> {
        let started = Instant::now();
        self.core.check_pair(u, v)?;
        let slot = *self
            .core
            .edges
            .get(&pair_key(u, v))
            .ok_or(GraphError::NoSuchEdge(u, v))?;
        let mut stats = UpdateStats::default();
        self.delete_chain(slot.from, slot.node, &mut stats);
        stats.max_out_degree_after = self.core.hist.max();
        stats.elapsed = started.elapsed();
        Ok(stats)
    }

    fn insert_chain(&mut self, mut tail: Vertex, mut head: Vertex, stats: &mut UpdateStats) {
        let mut step = Step::Outer;
        loop {
            stats.recursion_depth += 1;
            // Record tail -> head. The key is tail's degree before the raise,
            // matching the deferred state of every other heap entry for tail.
            let key = self.core.deg(tail);
            let handle = self.core.heaps[head as usize]
                .insert(tail, key)
                .expect("new in-neighbor key fits under the center");
            stats.work.heap_updates += 1;
            let node_new = self.core.add_oriented_back(tail, head, handle);
            let event = match step {
                Step::Outer => EdgeEvent::Added { from: tail, to: head },
                Step::Chained => EdgeEvent::Flipped { from: tail, to: head },
            };
            emit(&mut self.observers, &self.core, event);

            let victim = if self.faults.insert_skip_scan {
                NIL
            } else {
                self.scan_for_violation(tail, stats)
            };

            if victim != NIL {
                debug_assert_ne!(victim, node_new, "the new edge can never be the violated one");
                let dt = self.core.deg(tail);
                let removed = self.core.remove_oriented(tail, victim);
                self.core.heaps[removed.to as usize]
                    .delete(removed.handle)
                    .expect("victim edge has a live heap entry");
                stats.work.heap_updates += 1;
                stats.flips += 1;
                debug_assert_eq!(
                    dt,
                    self.core.deg(removed.to) + 2,
                    "a violated out-edge lags the tail by exactly two"
                );
                head = tail;
                tail = removed.to;
                step = Step::Chained;
                continue;
            }

            // Terminal step: tail's degree raise becomes visible to its
            // neighborhood in one sweep.
            if !self.faults.insert_skip_key_fixup {
                let mut cursor = self.core.lists[tail as usize].head;
                while cursor != NIL {
                    let node = self.core.nodes[cursor as usize];
                    self.core.heaps[node.to as usize]
                        .increment(node.handle)
                        .expect("out-edge heap entries track the tail");
                    stats.work.heap_updates += 1;
                    cursor = node.next;
                }
                self.core.heaps[tail as usize].increment_center();
                stats.work.heap_updates += 1;
            }
            return;
        }
    }

    /// First out-edge of `tail` whose head lags by more than one, in list
    /// order. The scan runs after the degree raise, so "lags by more than
    /// one" means exactly two here.
    fn scan_for_violation(&self, tail: Vertex, stats: &mut UpdateStats) -> u32 {
        let dt = self.core.deg(tail);
        let mut cursor = self.core.lists[tail as usize].head;
        while cursor != NIL {
            stats.work.list_entries_examined += 1;
            let node = &self.core.nodes[cursor as usize];
            if dt > self.core.deg(node.to) + 1 {
                return cursor;
            }
            cursor = node.next;
        }
        NIL
    }

    fn delete_chain(&mut self, mut tail: Vertex, mut node: u32, stats: &mut UpdateStats) {
        let mut step = Step::Outer;
        loop {
            stats.recursion_depth += 1;
            let removed = self.core.remove_oriented(tail, node);
            self.core.heaps[removed.to as usize]
                .delete(removed.handle)
                .expect("removed edge has a live heap entry");
            // Lower the center now so the max-report below compares fresh
            // in-degrees against tail's fresh degree; the deferred key
            // decrements for the rest of the neighborhood wait for the
            // terminal step.
            self.core.heaps[tail as usize]
                .decrement_center()
                .expect("tail owned an out-edge, so its center was positive");
            stats.work.heap_updates += 2;
            let event = match step {
                Step::Outer => EdgeEvent::Removed { from: tail, to: removed.to },
                Step::Chained => EdgeEvent::Flipped { from: removed.to, to: tail },
            };
            emit(&mut self.observers, &self.core, event);

            let flip_to = if self.faults.delete_skip_flip {
                None
            } else {
                self.core.heaps[tail as usize].report_max().map(|h| {
                    self.core.heaps[tail as usize]
                        .id_of(h)
                        .expect("report_max returns live handles")
                })
            };

            if let Some(vp) = flip_to {
                debug_assert_eq!(
                    self.core.deg(vp),
                    self.core.deg(tail) + 2,
                    "a reported in-neighbor leads the tail by exactly two"
                );
                let orig = self.core.edges[&pair_key(tail, vp)];
                debug_assert_eq!(orig.from, vp, "the reported edge points at the tail");
                // Take over the edge: record tail -> vp, then retire vp's
                // copy as the next chain step.
                self.core.heaps[tail as usize].increment_center();
                let key = self.core.deg(tail) + 1;
                let handle = self.core.heaps[vp as usize]
                    .insert(tail, key)
                    .expect("flip key sits below the in-neighbor's center");
                stats.work.heap_updates += 2;
                self.core.add_oriented_back(tail, vp, handle);
                stats.flips += 1;
                tail = vp;
                node = orig.node;
                step = Step::Chained;
                continue;
            }

            // Terminal step: publish tail's degree drop to its neighborhood.
            if !self.faults.delete_skip_key_fixup {
                let mut cursor = self.core.lists[tail as usize].head;
                while cursor != NIL {
                    let out = self.core.nodes[cursor as usize];
                    self.core.heaps[out.to as usize]
                        .decrement(out.handle)
                        .expect("out-edge heap entries track the tail");
                    stats.work.heap_updates += 1;
                    cursor = out.next;
                }
            }
            return;
        }
    }

    pub fn view(&self) -> GraphView<'_> {
        GraphView::new(&self.core)
    }

    /// Structural audit plus the edge invariant: every directed edge (u, v)
    /// satisfies dg(u) <= dg(v) + 1.
    pub fn validate_invariant2(&self) -> ValidationReport {
        let mut report = validate::check_structure(&self.core);
        validate::check_edge_invariant(&self.core, &mut report);
        report
    }
}

impl DynamicOrientation for OrientedGraph {
    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError> {
        OrientedGraph::insert_edge(self, u, v)
    }

    fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError> {
        OrientedGraph::delete_edge(self, u, v)
    }

    fn register_observer(&mut self, observer: Observer) -> ObserverId {
        self.observers.register(observer)
    }

    fn view(&self) -> GraphView<'_> {
        GraphView::new(&self.core)
    }
}
