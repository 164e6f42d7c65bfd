//! Dynamic matrix-by-vector coordinates. For a symmetric integer weight
//! matrix supported on the graph's edges (plus a diagonal), every vertex i
//! keeps the partial sum over its in-neighbors, `s_i = sum a_ij * x_j`.
//! A query adds the out-neighbor terms and the diagonal on the fly, so both
//! queries and vector updates touch at most the maintained out-degree many
//! entries, and a flip moves one product between two partial sums.
//!
//! Weights ride on the edge set: setting a nonzero weight on an absent pair
//! inserts the edge, setting zero deletes it, and deleting an edge through
//! the graph zeroes its weight.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::{DynamicOrientation, EdgeEvent, GraphError, Vertex};

/// Matrix weight. Integer for exact differential testing.
pub type Weight = i64;

struct MatVecState {
    /// Nonzero off-diagonal weights under canonical (min, max) pairs.
    weights: HashMap<(Vertex, Vertex), Weight>,
    diagonal: Vec<Weight>,
    x: Vec<Weight>,
    /// s[i] = sum over in-neighbors j of a_ij * x_j.
    partial: Vec<Weight>,
}

impl MatVecState {
    fn weight(&self, u: Vertex, v: Vertex) -> Weight {
        self.weights.get(&key(u, v)).copied().unwrap_or(0)
    }
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Handle to a matrix-vector product maintained inside a graph's observer
/// list. Mutations that touch the edge set take the graph as an argument.
#[derive(Clone)]
pub struct MatVec {
    state: Rc<RefCell<MatVecState>>,
}

impl MatVec {
    /// Subscribes to `graph`, which must not have any edges yet.
    pub fn attach<G: DynamicOrientation>(graph: &mut G) -> MatVec {
        let n = graph.view().vertex_count() as usize;
        assert_eq!(graph.view().edge_count(), 0, "matvec must attach to an edgeless graph");
        let state = Rc::new(RefCell::new(MatVecState {
            weights: HashMap::new(),
            diagonal: vec![0; n],
            x: vec![0; n],
            partial: vec![0; n],
        }));
        let hook = Rc::clone(&state);
        graph.register_observer(Box::new(move |_view, event| {
            let mut state = hook.borrow_mut();
            match event {
                EdgeEvent::Added { from, to } => {
                    let w = state.weight(from, to);
                    state.partial[to as usize] += w * state.x[from as usize];
                }
                EdgeEvent::Removed { from, to } => {
                    let w = state.weight(from, to);
                    state.partial[to as usize] -= w * state.x[from as usize];
                    state.weights.remove(&key(from, to));
                }
                EdgeEvent::Flipped { from, to } => {
                    let w = state.weight(from, to);
                    state.partial[from as usize] -= w * state.x[to as usize];
                    state.partial[to as usize] += w * state.x[from as usize];
                }
            }
        }));
        MatVec { state }
    }

    fn check_vertex(&self, u: Vertex) -> Result<(), GraphError> {
        if (u as usize) < self.state.borrow().x.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(u))
        }
    }

    /// Sets a_ij (and a_ji). Off-diagonal nonzero weights insert the backing
    /// edge when absent; zero deletes it.
    pub fn set_weight<G: DynamicOrientation>(
        &self,
        graph: &mut G,
        i: Vertex,
        j: Vertex,
        w: Weight,
    ) -> Result<(), GraphError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            self.state.borrow_mut().diagonal[i as usize] = w;
            return Ok(());
        }
        let present = graph.view().contains_edge(i, j);
        if w == 0 {
            if present {
                // The removal event settles both the partial sums and the
                // weight map.
                graph.delete_edge(i, j)?;
            }
            return Ok(());
        }
        if !present {
            // The edge arrives weightless; the events along the way all see
            // weight zero, and the adjustment below installs the real value
            // against the settled orientation.
            graph.insert_edge(i, j)?;
        }
        let (tail, head) = graph
            .view()
            .orientation_of(i, j)
            .expect("edge present after insertion");
        let mut state = self.state.borrow_mut();
        let old = state.weights.insert(key(i, j), w).unwrap_or(0);
        state.partial[head as usize] += (w - old) * state.x[tail as usize];
        Ok(())
    }

    /// Sets x_j and refreshes the partial sums of j's out-neighbors.
    pub fn set_x<G: DynamicOrientation>(
        &self,
        graph: &G,
        j: Vertex,
        value: Weight,
    ) -> Result<(), GraphError> {
        self.check_vertex(j)?;
        let mut state = self.state.borrow_mut();
        let old = state.x[j as usize];
        if old == value {
            return Ok(());
        }
        state.x[j as usize] = value;
        for w in graph.view().out_neighbors(j) {
            let a = state.weight(j, w);
            state.partial[w as usize] += a * (value - old);
        }
        Ok(())
    }

    /// y_i: the in-neighbor partial sum plus the out-neighbor terms plus the
    /// diagonal.
    pub fn query<G: DynamicOrientation>(&self, graph: &G, i: Vertex) -> Result<Weight, GraphError> {
        self.check_vertex(i)?;
        let state = self.state.borrow();
        let mut y = state.partial[i as usize] + state.diagonal[i as usize] * state.x[i as usize];
        for j in graph.view().out_neighbors(i) {
            y += state.weight(i, j) * state.x[j as usize];
        }
        Ok(y)
    }

    /// Direct read of x_j, for checkers.
    pub fn x_of(&self, j: Vertex) -> Weight {
        self.state.borrow().x[j as usize]
    }

    /// Direct read of a_ij (diagonal included), for checkers.
    pub fn weight_of(&self, i: Vertex, j: Vertex) -> Weight {
        let state = self.state.borrow();
        if i == j {
            state.diagonal[i as usize]
        } else {
            state.weight(i, j)
        }
    }
}
