//! Event-driven maximal matching. A vertex is free when it has no mate; the
//! invariant after every graph update is that no edge joins two free
//! vertices. Each vertex knows its free in-neighbors (`free_in`), so a
//! freshly freed vertex finds a partner by scanning its out-neighbors (at
//! most the maintained degree) plus one set lookup, and every status change
//! fans out to at most that many `free_in` sets.

use std::cell::RefCell;
use std::rc::Rc;

use indexmap::IndexSet;

use crate::{DynamicOrientation, EdgeEvent, GraphView, Vertex, NIL};

struct MatchingState {
    /// Partner per vertex, NIL when free.
    mate: Vec<Vertex>,
    /// Free in-neighbors per vertex. Contents are exact between updates;
    /// within an update they settle event by event.
    free_in: Vec<IndexSet<Vertex>>,
}

/// Handle to a matching maintained inside a graph's observer list. Cheap to
/// clone; all clones read the same state.
#[derive(Clone)]
pub struct Matching {
    state: Rc<RefCell<MatchingState>>,
}

impl Matching {
    /// Subscribes to `graph`, which must not have any edges yet.
    pub fn attach<G: DynamicOrientation>(graph: &mut G) -> Matching {
        let n = graph.view().vertex_count() as usize;
        assert_eq!(graph.view().edge_count(), 0, "matching must attach to an edgeless graph");
        let state = Rc::new(RefCell::new(MatchingState {
            mate: vec![NIL; n],
            free_in: vec![IndexSet::new(); n],
        }));
        let hook = Rc::clone(&state);
        graph.register_observer(Box::new(move |view, event| {
            hook.borrow_mut().on_event(view, event);
        }));
        Matching { state }
    }

    pub fn mate_of(&self, u: Vertex) -> Option<Vertex> {
        let mate = self.state.borrow().mate[u as usize];
        (mate != NIL).then_some(mate)
    }

    pub fn is_free(&self, u: Vertex) -> bool {
        self.state.borrow().mate[u as usize] == NIL
    }

    /// Number of matched pairs.
    pub fn size(&self) -> usize {
        self.state.borrow().mate.iter().filter(|&&m| m != NIL).count() / 2
    }

    /// Matched pairs as (smaller, larger), sorted.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        let state = self.state.borrow();
        let mut pairs: Vec<(Vertex, Vertex)> = state
            .mate
            .iter()
            .enumerate()
            .filter_map(|(u, &m)| (m != NIL && (u as Vertex) < m).then_some((u as Vertex, m)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// Audits the matching against the graph: involution, matched pairs are
    /// edges, maximality, and exact `free_in` contents.
    pub fn check(&self, view: GraphView<'_>) -> Result<(), String> {
        let state = self.state.borrow();
        for u in 0..view.vertex_count() {
            let m = state.mate[u as usize];
            if m == NIL {
                continue;
            }
            if state.mate[m as usize] != u {
                return Err(format!("mate is not an involution at {u} -> {m}"));
            }
            if !view.contains_edge(u, m) {
                return Err(format!("matched pair {{{u}, {m}}} is not an edge"));
            }
        }
        for (from, to) in view.edges() {
            if state.mate[from as usize] == NIL && state.mate[to as usize] == NIL {
                return Err(format!("edge {{{from}, {to}}} joins two free vertices"));
            }
        }
        for w in 0..view.vertex_count() {
            let mut expected: Vec<Vertex> = Vec::new();
            for u in 0..view.vertex_count() {
                if state.mate[u as usize] == NIL
                    && view.orientation_of(u, w).map(|(f, _)| f) == Some(u)
                {
                    expected.push(u);
                }
            }
            let actual = &state.free_in[w as usize];
            if actual.len() != expected.len() || !expected.iter().all(|u| actual.contains(u)) {
                return Err(format!(
                    "free_in of {w} holds {:?}, expected {expected:?}",
                    actual.iter().copied().collect::<Vec<_>>()
                ));
            }
        }
        Ok(())
    }
}

impl MatchingState {
    fn on_event(&mut self, view: GraphView<'_>, event: EdgeEvent) {
        match event {
            EdgeEvent::Added { from, to } => {
                if self.is_free(from) {
                    self.free_in[to as usize].insert(from);
                }
                if self.is_free(from) && self.is_free(to) {
                    self.join(view, from, to);
                }
            }
            EdgeEvent::Removed { from, to } => {
                self.free_in[to as usize].swap_remove(&from);
                if self.mate[from as usize] == to {
                    self.mate[from as usize] = NIL;
                    self.mate[to as usize] = NIL;
                    self.rematch(view, from);
                    self.rematch(view, to);
                }
            }
            EdgeEvent::Flipped { from, to } => {
                if self.is_free(to) {
                    self.free_in[from as usize].swap_remove(&to);
                }
                if self.is_free(from) {
                    self.free_in[to as usize].insert(from);
                }
            }
        }
    }

    fn is_free(&self, u: Vertex) -> bool {
        self.mate[u as usize] == NIL
    }

    /// Matches two free vertices and withdraws both from the free_in sets of
    /// their out-neighbors.
    fn join(&mut self, view: GraphView<'_>, u: Vertex, v: Vertex) {
        debug_assert!(self.is_free(u) && self.is_free(v));
        self.mate[u as usize] = v;
        self.mate[v as usize] = u;
        for w in view.out_neighbors(u) {
            self.free_in[w as usize].swap_remove(&u);
        }
        for w in view.out_neighbors(v) {
            self.free_in[w as usize].swap_remove(&v);
        }
    }

    /// A vertex just lost its mate: take any free neighbor (out-neighbors by
    /// scan, in-neighbors by the free_in set), or publish it as free.
    fn rematch(&mut self, view: GraphView<'_>, u: Vertex) {
        let partner = view
            .out_neighbors(u)
            .find(|&w| self.is_free(w))
            .or_else(|| self.free_in[u as usize].get_index(0).copied());
        match partner {
            Some(w) => self.join(view, u, w),
            None => {
                for w in view.out_neighbors(u) {
                    self.free_in[w as usize].insert(u);
                }
            }
        }
    }
}
