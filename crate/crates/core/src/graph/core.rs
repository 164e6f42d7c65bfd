//! Storage shared by both strategies: intrusive doubly linked out-lists over
//! a slab of nodes, one neighbor heap per vertex, the canonical edge index,
//! and the out-degree histogram.

use std::collections::HashMap;

use crate::neighbor_heap::{HeapHandle, NeighborHeap};
use crate::{Vertex, NIL};

use super::GraphError;

/// One directed adjacency entry. `handle` addresses the owning vertex's slot
/// inside `heaps[to]`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct OutNode {
    pub to: Vertex,
    pub handle: HeapHandle,
    pub prev: u32,
    pub next: u32,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct OutList {
    pub head: u32,
    pub tail: u32,
    pub len: u32,
}

impl OutList {
    fn new() -> Self {
        OutList { head: NIL, tail: NIL, len: 0 }
    }
}

/// Canonical-pair record: the edge {a, b} with a < b is stored once, under
/// (a, b), remembering its current tail and its slab node.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EdgeSlot {
    pub from: Vertex,
    pub node: u32,
}

/// Exact out-degree counts with O(1) updates and O(1) max queries.
/// `shift` only ever moves a vertex by one, so the running max either grows
/// by one or, when its last holder leaves, shrinks by one.
#[derive(Clone, Debug)]
pub(crate) struct DegreeHistogram {
    counts: Vec<u32>,
    max: u32,
}

impl DegreeHistogram {
    fn new(n: usize) -> Self {
        DegreeHistogram { counts: vec![n as u32], max: 0 }
    }

    fn shift(&mut self, old: u32, new: u32) {
        debug_assert!(old.abs_diff(new) == 1);
        self.counts[old as usize] -= 1;
        if new as usize >= self.counts.len() {
            self.counts.push(0);
        }
        self.counts[new as usize] += 1;
        if new > self.max {
            self.max = new;
        } else if old == self.max && self.counts[old as usize] == 0 {
            self.max = old - 1;
        }
    }

    pub(crate) fn max(&self) -> u32 {
        self.max
    }

    pub(crate) fn count_at(&self, degree: u32) -> u32 {
        self.counts.get(degree as usize).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct GraphCore {
    n: u32,
    pub(crate) lists: Vec<OutList>,
    pub(crate) nodes: Vec<OutNode>,
    free_node: u32,
    pub(crate) edges: HashMap<(Vertex, Vertex), EdgeSlot>,
    pub(crate) heaps: Vec<NeighborHeap>,
    pub(crate) deg: Vec<u32>,
    pub(crate) hist: DegreeHistogram,
}

/// Everything a caller needs after an edge record is taken out: the old head
/// endpoint, its heap handle, and the list position the node occupied.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Removed {
    pub to: Vertex,
    pub handle: HeapHandle,
    pub prev: u32,
    pub next: u32,
}

pub(crate) fn pair_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl GraphCore {
    pub(crate) fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n >= NIL as usize {
            return Err(GraphError::InvalidSize);
        }
        Ok(GraphCore {
            n: n as u32,
            lists: vec![OutList::new(); n],
            nodes: Vec::new(),
            free_node: NIL,
            edges: HashMap::new(),
            heaps: (0..n as Vertex).map(|v| NeighborHeap::new(v, 0)).collect(),
            deg: vec![0; n],
            hist: DegreeHistogram::new(n),
        })
    }

    pub(crate) fn vertex_count(&self) -> u32 {
        self.n
    }

    pub(crate) fn deg(&self, u: Vertex) -> u32 {
        self.deg[u as usize]
    }

    pub(crate) fn check_pair(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= self.n {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    fn alloc_node(&mut self, node: OutNode) -> u32 {
        if self.free_node != NIL {
            let idx = self.free_node;
            self.free_node = self.nodes[idx as usize].next;
            self.nodes[idx as usize] = node;
            idx
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    fn release_node(&mut self, idx: u32) {
        self.nodes[idx as usize].next = self.free_node;
        self.free_node = idx;
    }

    /// Links `node` into `owner`'s list between `prev` and `next` (either may
    /// be NIL, meaning the list head or tail side).
    pub(crate) fn link_between(&mut self, owner: Vertex, node: u32, prev: u32, next: u32) {
        let list = &mut self.lists[owner as usize];
        self.nodes[node as usize].prev = prev;
        self.nodes[node as usize].next = next;
        if prev == NIL {
            list.head = node;
        } else {
            self.nodes[prev as usize].next = node;
        }
        if next == NIL {
            list.tail = node;
        } else {
            self.nodes[next as usize].prev = node;
        }
        list.len += 1;
    }

    /// Unlinks `node` from `owner`'s list without freeing its slab slot.
    /// Returns the neighbors it sat between.
    pub(crate) fn unlink(&mut self, owner: Vertex, node: u32) -> (u32, u32) {
        let OutNode { prev, next, .. } = self.nodes[node as usize];
        let list = &mut self.lists[owner as usize];
        if prev == NIL {
            list.head = next;
        } else {
            self.nodes[prev as usize].next = next;
        }
        if next == NIL {
            list.tail = prev;
        } else {
            self.nodes[next as usize].prev = prev;
        }
        list.len -= 1;
        (prev, next)
    }

    /// Records the directed edge `tail -> head` at a chosen list position and
    /// raises `tail`'s degree. A record for the same pair may already exist
    /// mid-flip; the index entry is simply repointed at the new node.
    pub(crate) fn add_oriented(
        &mut self,
        tail: Vertex,
        head: Vertex,
        handle: HeapHandle,
        prev: u32,
        next: u32,
    ) -> u32 {
        let node = self.alloc_node(OutNode { to: head, handle, prev: NIL, next: NIL });
        self.link_between(tail, node, prev, next);
        self.edges.insert(pair_key(tail, head), EdgeSlot { from: tail, node });
        self.raise_degree(tail);
        node
    }

    pub(crate) fn add_oriented_back(&mut self, tail: Vertex, head: Vertex, handle: HeapHandle) -> u32 {
        let prev = self.lists[tail as usize].tail;
        self.add_oriented(tail, head, handle, prev, NIL)
    }

    /// Takes the record for `node` out of `tail`'s list, drops the index
    /// entry if it still points at this node (it points elsewhere while a
    /// flip holds both copies of a pair), and lowers `tail`'s degree. The
    /// caller settles the heap side with the returned handle.
    pub(crate) fn remove_oriented(&mut self, tail: Vertex, node: u32) -> Removed {
        let OutNode { to, handle, .. } = self.nodes[node as usize];
        let (prev, next) = self.unlink(tail, node);
        self.release_node(node);
        let key = pair_key(tail, to);
        if self.edges.get(&key).is_some_and(|slot| slot.node == node) {
            self.edges.remove(&key);
        }
        self.lower_degree(tail);
        Removed { to, handle, prev, next }
    }

    pub(crate) fn raise_degree(&mut self, u: Vertex) {
        let d = self.deg[u as usize];
        self.hist.shift(d, d + 1);
        self.deg[u as usize] = d + 1;
    }

    pub(crate) fn lower_degree(&mut self, u: Vertex) {
        let d = self.deg[u as usize];
        debug_assert!(d > 0, "degree underflow at {u}");
        self.hist.shift(d, d - 1);
        self.deg[u as usize] = d - 1;
    }

    /// Moves the in-order segment `first ..= last` of `owner`'s list to the
    /// front. No-op when the segment already starts the list.
    pub(crate) fn move_segment_to_front(&mut self, owner: Vertex, first: u32, last: u32) {
        let list = &mut self.lists[owner as usize];
        if list.head == first {
            return;
        }
        let before = self.nodes[first as usize].prev;
        let after = self.nodes[last as usize].next;
        debug_assert_ne!(before, NIL);
        self.nodes[before as usize].next = after;
        if after == NIL {
            list.tail = before;
        } else {
            self.nodes[after as usize].prev = before;
        }
        let old_head = list.head;
        self.nodes[first as usize].prev = NIL;
        self.nodes[last as usize].next = old_head;
        self.nodes[old_head as usize].prev = last;
        list.head = first;
    }

    pub(crate) fn move_to_front(&mut self, owner: Vertex, node: u32) {
        if self.lists[owner as usize].head == node {
            return;
        }
        self.unlink(owner, node);
        let head = self.lists[owner as usize].head;
        self.link_between(owner, node, NIL, head);
    }
}

/// Read-only snapshot of an orientation structure, handed to observers and
/// available between updates via `view()`.
#[derive(Clone, Copy)]
pub struct GraphView<'a> {
    core: &'a GraphCore,
}

impl<'a> GraphView<'a> {
    pub(crate) fn new(core: &'a GraphCore) -> Self {
        GraphView { core }
    }

    pub fn vertex_count(&self) -> u32 {
        self.core.n
    }

    pub fn edge_count(&self) -> usize {
        self.core.edges.len()
    }

    pub fn out_degree(&self, u: Vertex) -> u32 {
        self.core.deg[u as usize]
    }

    pub fn in_degree(&self, u: Vertex) -> u32 {
        self.core.heaps[u as usize].len() as u32
    }

    pub fn max_out_degree(&self) -> u32 {
        self.core.hist.max()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.core.edges.contains_key(&pair_key(u, v))
    }

    /// Current direction of the edge {u, v} as `(tail, head)`.
    pub fn orientation_of(&self, u: Vertex, v: Vertex) -> Option<(Vertex, Vertex)> {
        let slot = self.core.edges.get(&pair_key(u, v))?;
        let head = self.core.nodes[slot.node as usize].to;
        Some((slot.from, head))
    }

    /// Out-neighbors of `u` in list order (most strategies keep a meaningful
    /// order; see the strategy docs).
    pub fn out_neighbors(&self, u: Vertex) -> OutNeighbors<'a> {
        OutNeighbors { core: self.core, cursor: self.core.lists[u as usize].head }
    }

    /// All directed edges as `(tail, head)`, in unspecified order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + 'a {
        let core = self.core;
        core.edges.values().map(move |slot| (slot.from, core.nodes[slot.node as usize].to))
    }
}

pub struct OutNeighbors<'a> {
    core: &'a GraphCore,
    cursor: u32,
}

impl Iterator for OutNeighbors<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.cursor == NIL {
            return None;
        }
        let node = &self.core.nodes[self.cursor as usize];
        self.cursor = node.next;
        Some(node.to)
    }
}
