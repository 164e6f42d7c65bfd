//! Windowed strategy. Each vertex keeps its out-edges in an ordered list
//! read as blocks of `gamma = ceil(beta * alpha)` entries: the i-th block
//! only promises validity up to rank i (head degree at least the tail's
//! minus i). Insertions check a single block-sized window at the back of the
//! list instead of the whole list; the terminal rotation moves that freshly
//! checked window (and then the new edge) to the front, so every entry ages
//! backward through blocks no faster than its validity rank decays.

use std::time::Instant;

use crate::{Vertex, NIL};

use super::core::{pair_key, GraphCore, GraphView};
use super::validate::{self, ValidationReport};
use super::{
    choose_tail, emit, DynamicOrientation, EdgeEvent, FaultPlan, GraphError, Observer,
    ObserverId, ObserverRegistry, UpdateStats,
};

/// Parameters of the degree bound `beta * alpha + ceil(log_beta n)`.
///
/// `alpha` is the arboricity the structure is provisioned for; exceeding it
/// costs degree bound slack, never correctness. `beta` trades scan width
/// (`gamma = ceil(beta * alpha)` per step) against the logarithmic term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumConfig {
    pub alpha: u32,
    pub beta: f64,
}

impl SpectrumConfig {
    pub fn new(alpha: u32, beta: f64) -> Result<Self, GraphError> {
        if alpha == 0 {
            return Err(GraphError::InvalidParams("alpha must be at least 1"));
        }
        if !beta.is_finite() || beta <= 1.0 {
            return Err(GraphError::InvalidParams("beta must be finite and exceed 1"));
        }
        Ok(SpectrumConfig { alpha, beta })
    }

    /// Block width. `beta > 1` and `alpha >= 1` force `gamma >= 2`, which the
    /// window arithmetic (`gamma - 1 >= 1`) relies on.
    pub fn gamma(&self) -> u32 {
        (self.beta * self.alpha as f64).ceil() as u32
    }
}

enum Step {
    Outer,
    Chained,
}

pub struct SpectrumGraph {
    pub(crate) core: GraphCore,
    observers: ObserverRegistry,
    faults: FaultPlan,
    config: SpectrumConfig,
    gamma: u32,
}

impl std::fmt::Debug for SpectrumGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectrumGraph")
            .field("vertices", &self.core.vertex_count())
            .field("edges", &self.core.edges.len())
            .field("config", &self.config)
            .field("observers", &self.observers)
            .finish()
    }
}

impl Clone for SpectrumGraph {
    /// Clones the structure only; observers stay with the original.
    fn clone(&self) -> Self {
        SpectrumGraph {
            core: self.core.clone(),
            observers: ObserverRegistry::default(),
            faults: self.faults,
            config: self.config,
            gamma: self.gamma,
        }
    }
}

impl SpectrumGraph {
    pub fn new(n: usize, config: SpectrumConfig) -> Result<Self, GraphError> {
        Ok(SpectrumGraph {
            core: GraphCore::new(n)?,
            observers: ObserverRegistry::default(),
            faults: FaultPlan::default(),
            gamma: config.gamma(),
            config,
        })
    }

    #[doc(hidden)]
    pub fn set_fault_plan(&mut self, faults: FaultPlan) {
        self.faults = faults;
    }

    pub fn config(&self) -> SpectrumConfig {
        self.config
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
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

            // One block-sized window just ahead of the new edge. The new
            // edge itself is never violated at this point and stays out of
            // the window.
            let len = self.core.lists[tail as usize].len;
            let window = (self.gamma - 1).min(len - 1);
            let victim = if self.faults.insert_skip_scan {
                NIL
            } else if self.faults.spectrum_scan_front {
                self.scan_front(tail, window, stats)
            } else {
                self.scan_window(tail, node_new, window, stats)
            };

            if victim != NIL {
                let dt = self.core.deg(tail);
                // The new edge takes over the violated entry's list position
                // so the block structure around it is undisturbed.
                self.core.unlink(tail, node_new);
                let removed = self.core.remove_oriented(tail, victim);
                self.core.heaps[removed.to as usize]
                    .delete(removed.handle)
                    .expect("victim edge has a live heap entry");
                stats.work.heap_updates += 1;
                self.core.link_between(tail, node_new, removed.prev, removed.next);
                stats.work.list_splices += 1;
                stats.flips += 1;
                debug_assert!(
                    dt >= self.core.deg(removed.to) + 2,
                    "a violated out-edge lags the tail by at least two"
                );
                head = tail;
                tail = removed.to;
                step = Step::Chained;
                continue;
            }

            // Terminal step: publish the degree raise, then rotate the
            // just-checked window to the front followed by the new edge, so
            // the front block is fresh.
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
            if !self.faults.spectrum_skip_rotation {
                if window > 0 {
                    let last = self.core.nodes[node_new as usize].prev;
                    let mut first = last;
                    for _ in 1..window {
                        first = self.core.nodes[first as usize].prev;
                    }
                    self.core.move_segment_to_front(tail, first, last);
                    stats.work.list_splices += 1;
                }
                self.core.move_to_front(tail, node_new);
                stats.work.list_splices += 1;
            }
            return;
        }
    }

    /// Walks `window` entries backward from the new edge's predecessor and
    /// returns the first violated one, scan order, or NIL.
    fn scan_window(&self, tail: Vertex, node_new: u32, window: u32, stats: &mut UpdateStats) -> u32 {
        let dt = self.core.deg(tail);
        let mut cursor = self.core.nodes[node_new as usize].prev;
        for _ in 0..window {
            stats.work.list_entries_examined += 1;
            let node = &self.core.nodes[cursor as usize];
            if dt > self.core.deg(node.to) + 1 {
                return cursor;
            }
            cursor = node.prev;
        }
        NIL
    }

    /// Fault-plan variant of [`Self::scan_window`]: checks the same number of
    /// entries but from the wrong end of the list.
    fn scan_front(&self, tail: Vertex, window: u32, stats: &mut UpdateStats) -> u32 {
        let dt = self.core.deg(tail);
        let mut cursor = self.core.lists[tail as usize].head;
        for _ in 0..window {
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
            // Lower the center before consulting the max-report (same
            // reasoning as the baseline strategy).
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
                debug_assert!(
                    self.core.deg(vp) >= self.core.deg(tail) + 2,
                    "a reported in-neighbor leads the tail by at least two"
                );
                let orig = self.core.edges[&pair_key(tail, vp)];
                debug_assert_eq!(orig.from, vp, "the reported edge points at the tail");
                self.core.heaps[tail as usize].increment_center();
                let key = self.core.deg(tail) + 1;
                let handle = self.core.heaps[vp as usize]
                    .insert(tail, key)
                    .expect("flip key sits below the in-neighbor's center");
                stats.work.heap_updates += 2;
                if self.faults.spectrum_delete_skip_replace {
                    self.core.add_oriented_back(tail, vp, handle);
                } else {
                    // The replacement inherits the removed edge's list
                    // position; its head leads by two or more, so any block
                    // accepts it.
                    self.core.add_oriented(tail, vp, handle, removed.prev, removed.next);
                    stats.work.list_splices += 1;
                }
                stats.flips += 1;
                tail = vp;
                node = orig.node;
                step = Step::Chained;
                continue;
            }

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

    /// Structural audit plus positional list validity: the entry at 1-based
    /// position p must be valid at rank ceil(p / gamma).
    pub fn validate_lists(&self) -> ValidationReport {
        let mut report = validate::check_structure(&self.core);
        validate::check_lists(&self.core, self.gamma, &mut report);
        report
    }

    /// Structural audit plus the order-free block condition: sorting each
    /// vertex's out-neighbor degrees in descending order and filling blocks
    /// greedily must satisfy every rank.
    pub fn validate_invariant3(&self) -> ValidationReport {
        let mut report = validate::check_structure(&self.core);
        validate::check_greedy_partition(&self.core, self.gamma, &mut report);
        report
    }
}

impl DynamicOrientation for SpectrumGraph {
    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError> {
        SpectrumGraph::insert_edge(self, u, v)
    }

    fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, GraphError> {
        SpectrumGraph::delete_edge(self, u, v)
    }

    fn register_observer(&mut self, observer: Observer) -> ObserverId {
        self.observers.register(observer)
    }

    fn view(&self) -> GraphView<'_> {
        GraphView::new(&self.core)
    }
}
