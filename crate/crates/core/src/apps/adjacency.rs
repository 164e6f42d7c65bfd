//! Ordered-set adjacency queries. Each vertex carries the sorted set of its
//! current out-neighbors; an adjacency test probes the two candidate sets,
//! so it costs O(log d) where d is the maintained out-degree bound. Flips
//! move one membership between two sets.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::rc::Rc;

use crate::{DynamicOrientation, EdgeEvent, GraphError, Vertex};

struct AdjacencyState {
    out_sets: Vec<BTreeSet<Vertex>>,
}

/// Handle to an adjacency index maintained inside a graph's observer list.
#[derive(Clone)]
pub struct AdjacencyIndex {
    state: Rc<RefCell<AdjacencyState>>,
}

impl AdjacencyIndex {
    /// Subscribes to `graph`, which must not have any edges yet.
    pub fn attach<G: DynamicOrientation>(graph: &mut G) -> AdjacencyIndex {
        let n = graph.view().vertex_count() as usize;
        assert_eq!(graph.view().edge_count(), 0, "adjacency index must attach to an edgeless graph");
        let state = Rc::new(RefCell::new(AdjacencyState { out_sets: vec![BTreeSet::new(); n] }));
        let hook = Rc::clone(&state);
        graph.register_observer(Box::new(move |_view, event| {
            let mut state = hook.borrow_mut();
            match event {
                EdgeEvent::Added { from, to } => {
                    state.out_sets[from as usize].insert(to);
                }
                EdgeEvent::Removed { from, to } => {
                    state.out_sets[from as usize].remove(&to);
                }
                EdgeEvent::Flipped { from, to } => {
                    state.out_sets[to as usize].remove(&from);
                    state.out_sets[from as usize].insert(to);
                }
            }
        }));
        AdjacencyIndex { state }
    }

    /// Whether {u, v} is currently an edge. Self-pairs are never adjacent.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        let state = self.state.borrow();
        let n = state.out_sets.len();
        if u as usize >= n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v as usize >= n {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(state.out_sets[u as usize].contains(&v) || state.out_sets[v as usize].contains(&u))
    }

    /// Sorted out-neighbors of `u`, for differential checks.
    pub fn out_neighbors(&self, u: Vertex) -> Vec<Vertex> {
        self.state.borrow().out_sets[u as usize].iter().copied().collect()
    }
}
