//! Differential test of the bucketed neighbor heap against the linear-scan
//! reference: a long seeded random op stream (including deliberately invalid
//! calls) must produce identical observable behavior on every step.

use std::collections::HashMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arbor_core::oracle::ReferenceHeap;
use arbor_core::{HeapHandle, NeighborHeap, Vertex};

struct Pair {
    heap: NeighborHeap,
    reference: ReferenceHeap,
    handles: HashMap<Vertex, HeapHandle>,
}

impl Pair {
    fn new(center_key: u32) -> Self {
        Pair {
            heap: NeighborHeap::new(0, center_key),
            reference: ReferenceHeap::new(center_key),
            handles: HashMap::new(),
        }
    }

    fn insert(&mut self, id: Vertex, key: u32) {
        let real = self.heap.insert(id, key);
        let expected = self.reference.insert(id, key);
        assert_eq!(real.as_ref().err(), expected.as_ref().err(), "insert({id}, {key})");
        if let Ok(handle) = real {
            self.handles.insert(id, handle);
        }
    }

    fn delete(&mut self, id: Vertex) {
        let handle = self.handles.remove(&id).expect("live id");
        self.heap.delete(handle).expect("live handle deletes");
        self.reference.delete(id).expect("reference mirrors liveness");
    }

    fn increment(&mut self, id: Vertex) {
        let handle = self.handles[&id];
        self.heap.increment(handle).expect("live handle increments");
        self.reference.increment(id).expect("reference mirrors liveness");
    }

    fn decrement(&mut self, id: Vertex) -> bool {
        let handle = self.handles[&id];
        let real = self.heap.decrement(handle);
        let expected = self.reference.decrement(id);
        assert_eq!(real.err(), expected.err(), "decrement({id})");
        expected.is_ok()
    }

    fn decrement_center(&mut self) {
        let real = self.heap.decrement_center();
        let expected = self.reference.decrement_center();
        assert_eq!(real.err(), expected.err(), "decrement_center");
    }

    fn check_report(&self) {
        let real = self.heap.report_max().map(|h| {
            (
                self.heap.id_of(h).expect("reported handle is live"),
                self.heap.key_of(h).expect("reported handle is live"),
            )
        });
        let expected = self.reference.report_max();
        match (real, expected) {
            (None, None) => {}
            (Some((id, key)), Some((max_key, ids))) => {
                assert_eq!(key, max_key, "reported key");
                assert!(ids.contains(&id), "reported id {id} not among maxima {ids:?}");
            }
            (real, expected) => panic!("report_max diverged: {real:?} vs {expected:?}"),
        }
    }

    fn check_keys(&self, id: Vertex) {
        let real = self.handles.get(&id).map(|&h| self.heap.key_of(h).expect("live handle"));
        assert_eq!(real, self.reference.key_of(id), "key_of({id})");
    }

    fn check_multiset(&self) {
        let mut real: Vec<(Vertex, u32)> = self.heap.iter().collect();
        real.sort_unstable();
        assert_eq!(real, self.reference.multiset(), "multiset");
        assert_eq!(self.heap.len(), self.reference.len(), "len");
        assert_eq!(self.heap.center_key(), self.reference.center_key(), "center key");
    }
}

/// A million seeded ops, error cases included, with report and key probes on
/// every step and periodic multiset and structure audits.
#[test]
fn long_random_stream_matches_the_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6eb1);
    let mut pair = Pair::new(3);
    let mut live: Vec<Vertex> = Vec::new();
    let mut next_id: Vertex = 0;

    for step in 0..1_000_000u32 {
        // The reference runs linear scans, so keep it at a size where a
        // million differential steps stay well inside the time budget.
        if live.len() > 3000 {
            let id = live.swap_remove(rng.gen_range(0..live.len()));
            pair.delete(id);
        }
        let roll = rng.gen_range(0..100);
        if roll < 28 {
            // Mostly-legal inserts: keys drawn a little past the legal cap so
            // KeyTooHigh paths stay exercised.
            let key = rng.gen_range(0..pair.heap.center_key() + 3);
            pair.insert(next_id, key);
            if pair.handles.contains_key(&next_id) {
                live.push(next_id);
            }
            next_id += 1;
        } else if roll < 33 {
            // Duplicate insert: never lands, error must match.
            if let Some(&id) = live.last() {
                let key = rng.gen_range(0..pair.heap.center_key() + 3);
                pair.insert(id, key);
            }
        } else if roll < 48 {
            if !live.is_empty() {
                let id = live.swap_remove(rng.gen_range(0..live.len()));
                pair.delete(id);
            }
        } else if roll < 68 {
            if !live.is_empty() {
                let id = live[rng.gen_range(0..live.len())];
                pair.increment(id);
            }
        } else if roll < 83 {
            if !live.is_empty() {
                let id = live[rng.gen_range(0..live.len())];
                pair.decrement(id);
            }
        } else if roll < 91 {
            pair.heap.increment_center();
            pair.reference.increment_center();
        } else {
            pair.decrement_center();
        }

        pair.check_report();
        if !live.is_empty() {
            pair.check_keys(live[rng.gen_range(0..live.len())]);
        }
        if step % 1024 == 0 {
            pair.check_multiset();
            pair.heap.validate_structure().expect("structure audit");
        }
    }
    pair.check_multiset();
    pair.heap.validate_structure().expect("final structure audit");
}

#[derive(Clone, Debug)]
enum HeapOp {
    Insert(u32),
    Delete(usize),
    Increment(usize),
    Decrement(usize),
    IncrementCenter,
    DecrementCenter,
    Report,
}

fn heap_ops() -> impl Strategy<Value = Vec<HeapOp>> {
    prop::collection::vec(
        prop_oneof![
            (0u32..8).prop_map(HeapOp::Insert),
            prop::num::usize::ANY.prop_map(HeapOp::Delete),
            prop::num::usize::ANY.prop_map(HeapOp::Increment),
            prop::num::usize::ANY.prop_map(HeapOp::Decrement),
            Just(HeapOp::IncrementCenter),
            Just(HeapOp::DecrementCenter),
            Just(HeapOp::Report),
        ],
        0..200,
    )
}

proptest! {
    /// Arbitrary short op sequences agree with the reference and keep the
    /// structure audit green after every single step.
    #[test]
    fn arbitrary_sequences_match_the_reference(ops in heap_ops(), center in 0u32..5) {
        let mut pair = Pair::new(center);
        let mut live: Vec<Vertex> = Vec::new();
        let mut next_id: Vertex = 0;
        for op in ops {
            match op {
                HeapOp::Insert(key) => {
                    pair.insert(next_id, key);
                    if pair.handles.contains_key(&next_id) {
                        live.push(next_id);
                    }
                    next_id += 1;
                }
                HeapOp::Delete(pick) if !live.is_empty() => {
                    let id = live.swap_remove(pick % live.len());
                    pair.delete(id);
                }
                HeapOp::Increment(pick) if !live.is_empty() => {
                    let id = live[pick % live.len()];
                    pair.increment(id);
                }
                HeapOp::Decrement(pick) if !live.is_empty() => {
                    let id = live[pick % live.len()];
                    pair.decrement(id);
                }
                HeapOp::IncrementCenter => {
                    pair.heap.increment_center();
                    pair.reference.increment_center();
                }
                HeapOp::DecrementCenter => pair.decrement_center(),
                HeapOp::Report => pair.check_report(),
                _ => {}
            }
            pair.check_report();
            pair.check_multiset();
            pair.heap.validate_structure().expect("structure audit");
        }
    }
}
