//! Bucketed in-neighbor heap with constant-time key motion.
//!
//! One heap is kept per vertex `w`; its elements are the in-neighbors of `w`
//! and the key of an element is (a possibly briefly deferred copy of) that
//! neighbor's out-degree. The heap is centered on `w`'s own out-degree `k0`
//! and exploits that keys only ever move by one:
//!
//! ```text
//!   low_buckets: [ 0 | 1 | ... | k0+1 ]     one slot per key <= k0+1
//!   high_buckets: (k0+2) <-> (k0+4) <-> ...  sorted nonempty buckets, keys >= k0+2
//! ```
//!
//! Every bucket is an intrusive doubly-linked list of element records.
//! `increment`/`decrement` move one element to an adjacent bucket in O(1).
//! `increment_center`/`decrement_center` grow or shrink the slot array by one
//! and migrate at most one boundary bucket between the array and the sorted
//! list; element records are never touched by center moves.
//!
//! `report_max` is restricted by design: it answers only when some key is at
//! least `k0 + 2` (the sorted list is nonempty) and returns an element of the
//! maximum key from the list tail, in O(1). Callers that need "key >= k0 + 1"
//! first shift the center down, which migrates the boundary bucket into the
//! list where `report_max` can see it.
//!
//! Handles are generation-stamped: deleting an element invalidates its handle
//! forever, and any later use reports a stale-handle error even if the
//! underlying arena slot has been reused.

use std::collections::HashMap;

use thiserror::Error;

use crate::{Vertex, NIL};

/// Stable reference to a live heap element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeapHandle {
    slot: u32,
    generation: u32,
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum HeapError {
    #[error("key {key} exceeds center key {center} + 1")]
    KeyTooHigh { key: u32, center: u32 },
    #[error("element {0} is already present")]
    DuplicateId(Vertex),
    #[error("stale or unknown heap handle")]
    StaleHandle,
    #[error("cannot decrement key 0")]
    DecrementBelowZero,
    #[error("cannot decrement center key 0")]
    CenterBelowZero,
}

#[derive(Clone, Debug)]
struct Element {
    id: Vertex,
    key: u32,
    bucket: u32,
    prev: u32,
    next: u32,
    generation: u32,
    live: bool,
}

#[derive(Clone, Debug)]
struct Bucket {
    key: u32,
    head: u32,
    // Links in the sorted high list; unused while the bucket sits in a low slot.
    prev: u32,
    next: u32,
    live: bool,
}

/// Bucketed heap over the in-neighbors of one center vertex.
#[derive(Clone, Debug)]
pub struct NeighborHeap {
    center_id: Vertex,
    center_key: u32,
    /// `low[k]` is the bucket holding key `k`, or `NIL`; length is `center_key + 2`.
    low: Vec<u32>,
    high_head: u32,
    high_tail: u32,
    elements: Vec<Element>,
    free_element: u32,
    buckets: Vec<Bucket>,
    free_bucket: u32,
    ids: HashMap<Vertex, u32>,
    len: usize,
}

impl NeighborHeap {
    pub fn new(center_id: Vertex, center_key: u32) -> Self {
        NeighborHeap {
            center_id,
            center_key,
            low: vec![NIL; center_key as usize + 2],
            high_head: NIL,
            high_tail: NIL,
            elements: Vec::new(),
            free_element: NIL,
            buckets: Vec::new(),
            free_bucket: NIL,
            ids: HashMap::new(),
            len: 0,
        }
    }

    pub fn center_id(&self) -> Vertex {
        self.center_id
    }

    pub fn center_key(&self) -> u32 {
        self.center_key
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Inserts `id` with `key`, which may not exceed `center_key + 1`.
    pub fn insert(&mut self, id: Vertex, key: u32) -> Result<HeapHandle, HeapError> {
        if key > self.center_key + 1 {
            return Err(HeapError::KeyTooHigh {
                key,
                center: self.center_key,
            });
        }
        if self.ids.contains_key(&id) {
            return Err(HeapError::DuplicateId(id));
        }
        let bucket = self.low_bucket(key);
        let slot = self.alloc_element(id, key);
        self.link_element(slot, bucket);
        self.ids.insert(id, slot);
        self.len += 1;
        Ok(HeapHandle {
            slot,
            generation: self.elements[slot as usize].generation,
        })
    }

    /// Removes the element behind `handle`.
    pub fn delete(&mut self, handle: HeapHandle) -> Result<(), HeapError> {
        let slot = self.resolve(handle)?;
        self.unlink_element(slot);
        let elem = &mut self.elements[slot as usize];
        elem.live = false;
        elem.generation = elem.generation.wrapping_add(1);
        let id = elem.id;
        elem.next = self.free_element;
        self.free_element = slot;
        self.ids.remove(&id);
        self.len -= 1;
        Ok(())
    }

    /// Moves the element behind `handle` one key up.
    pub fn increment(&mut self, handle: HeapHandle) -> Result<(), HeapError> {
        let slot = self.resolve(handle)?;
        let key = self.elements[slot as usize].key;
        let new_key = key + 1;
        let target = if new_key <= self.center_key + 1 {
            self.low_bucket(new_key)
        } else if key <= self.center_key + 1 {
            // Crossing from the top low slot into the high list.
            self.high_bucket_at_front(new_key)
        } else {
            let current = self.elements[slot as usize].bucket;
            self.high_bucket_after(current, new_key)
        };
        self.unlink_element(slot);
        self.link_element(slot, target);
        self.elements[slot as usize].key = new_key;
        Ok(())
    }

    /// Moves the element behind `handle` one key down.
    pub fn decrement(&mut self, handle: HeapHandle) -> Result<(), HeapError> {
        let slot = self.resolve(handle)?;
        let key = self.elements[slot as usize].key;
        if key == 0 {
            return Err(HeapError::DecrementBelowZero);
        }
        let target = if key - 1 <= self.center_key + 1 {
            // Covers both moves within the low range and the drop out of the
            // high list into the top low slot.
            self.low_bucket(key - 1)
        } else {
            let current = self.elements[slot as usize].bucket;
            self.high_bucket_before(current, key - 1)
        };
        self.unlink_element(slot);
        self.link_element(slot, target);
        self.elements[slot as usize].key = key - 1;
        Ok(())
    }

    /// Raises the center key by one and widens the low slot array to match.
    ///
    /// If the high list starts with a bucket whose key equals the new
    /// `center_key + 1`, that bucket migrates into the new top slot.
    pub fn increment_center(&mut self) {
        self.center_key += 1;
        let boundary = self.center_key + 1;
        let head = self.high_head;
        if head != NIL && self.buckets[head as usize].key == boundary {
            self.unlink_high(head);
            self.low.push(head);
        } else {
            self.low.push(NIL);
        }
    }

    /// Lowers the center key by one and narrows the low slot array to match.
    ///
    /// A nonempty bucket in the old top slot migrates to the front of the
    /// high list (its key equals the new `center_key + 2`).
    pub fn decrement_center(&mut self) -> Result<(), HeapError> {
        if self.center_key == 0 {
            return Err(HeapError::CenterBelowZero);
        }
        self.center_key -= 1;
        let popped = self.low.pop().expect("low slot array is never empty");
        if popped != NIL {
            self.push_high_front(popped);
        }
        Ok(())
    }

    /// Returns an element of maximum key, provided some key is at least
    /// `center_key + 2`; otherwise `None`.
    pub fn report_max(&self) -> Option<HeapHandle> {
        if self.high_tail == NIL {
            return None;
        }
        let slot = self.buckets[self.high_tail as usize].head;
        debug_assert_ne!(slot, NIL, "high buckets are never empty");
        Some(HeapHandle {
            slot,
            generation: self.elements[slot as usize].generation,
        })
    }

    pub fn key_of(&self, handle: HeapHandle) -> Result<u32, HeapError> {
        Ok(self.elements[self.resolve(handle)? as usize].key)
    }

    pub fn id_of(&self, handle: HeapHandle) -> Result<Vertex, HeapError> {
        Ok(self.elements[self.resolve(handle)? as usize].id)
    }

    pub fn contains_id(&self, id: Vertex) -> bool {
        self.ids.contains_key(&id)
    }

    pub fn handle_of(&self, id: Vertex) -> Option<HeapHandle> {
        self.ids.get(&id).map(|&slot| HeapHandle {
            slot,
            generation: self.elements[slot as usize].generation,
        })
    }

    /// Live `(id, key)` pairs in arbitrary order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.elements
            .iter()
            .filter(|e| e.live)
            .map(|e| (e.id, e.key))
    }

    /// Verifies every structural invariant; returns the first failure.
    ///
    /// O(count + center_key). Intended for tests and the full check mode.
    pub fn validate_structure(&self) -> Result<(), String> {
        if self.low.len() != self.center_key as usize + 2 {
            return Err(format!(
                "low slot array has {} slots, expected {}",
                self.low.len(),
                self.center_key + 2
            ));
        }
        let mut seen = 0usize;
        let mut live_buckets = 0usize;
        for (k, &b) in self.low.iter().enumerate() {
            if b == NIL {
                continue;
            }
            live_buckets += 1;
            let bucket = &self.buckets[b as usize];
            if !bucket.live || bucket.key != k as u32 {
                return Err(format!("low slot {k} holds a bucket keyed {}", bucket.key));
            }
            seen += self.check_bucket_chain(b)?;
        }
        let mut prev = NIL;
        let mut cursor = self.high_head;
        let mut last_key = self.center_key + 1;
        while cursor != NIL {
            live_buckets += 1;
            let bucket = &self.buckets[cursor as usize];
            if !bucket.live {
                return Err("dead bucket linked in high list".into());
            }
            if bucket.prev != prev {
                return Err("high list prev link broken".into());
            }
            if bucket.key <= last_key {
                return Err(format!(
                    "high list keys not ascending past center ({} after {last_key})",
                    bucket.key
                ));
            }
            if bucket.head == NIL {
                return Err(format!("empty bucket keyed {} in high list", bucket.key));
            }
            seen += self.check_bucket_chain(cursor)?;
            last_key = bucket.key;
            prev = cursor;
            cursor = bucket.next;
        }
        if prev != self.high_tail {
            return Err("high list tail pointer broken".into());
        }
        if seen != self.len {
            return Err(format!("{seen} linked elements but len = {}", self.len));
        }
        if self.ids.len() != self.len {
            return Err("id index out of sync".into());
        }
        if live_buckets > self.len {
            return Err(format!(
                "{live_buckets} live buckets for {} elements",
                self.len
            ));
        }
        Ok(())
    }

    fn check_bucket_chain(&self, b: u32) -> Result<usize, String> {
        let bucket = &self.buckets[b as usize];
        let mut count = 0;
        let mut prev = NIL;
        let mut cursor = bucket.head;
        if cursor == NIL {
            return Err(format!("empty live bucket keyed {}", bucket.key));
        }
        while cursor != NIL {
            let elem = &self.elements[cursor as usize];
            if !elem.live {
                return Err("dead element linked in a bucket".into());
            }
            if elem.bucket != b || elem.key != bucket.key {
                return Err(format!(
                    "element {} keyed {} linked under bucket keyed {}",
                    elem.id, elem.key, bucket.key
                ));
            }
            if elem.prev != prev {
                return Err("element prev link broken".into());
            }
            if self.ids.get(&elem.id) != Some(&cursor) {
                return Err(format!("id index misses element {}", elem.id));
            }
            count += 1;
            prev = cursor;
            cursor = elem.next;
        }
        Ok(count)
    }

    fn resolve(&self, handle: HeapHandle) -> Result<u32, HeapError> {
        match self.elements.get(handle.slot as usize) {
            Some(e) if e.live && e.generation == handle.generation => Ok(handle.slot),
            _ => Err(HeapError::StaleHandle),
        }
    }

    fn alloc_element(&mut self, id: Vertex, key: u32) -> u32 {
        if self.free_element != NIL {
            let slot = self.free_element;
            let elem = &mut self.elements[slot as usize];
            self.free_element = elem.next;
            elem.id = id;
            elem.key = key;
            elem.live = true;
            slot
        } else {
            self.elements.push(Element {
                id,
                key,
                bucket: NIL,
                prev: NIL,
                next: NIL,
                generation: 0,
                live: true,
            });
            (self.elements.len() - 1) as u32
        }
    }

    fn alloc_bucket(&mut self, key: u32) -> u32 {
        if self.free_bucket != NIL {
            let b = self.free_bucket;
            let bucket = &mut self.buckets[b as usize];
            self.free_bucket = bucket.next;
            bucket.key = key;
            bucket.head = NIL;
            bucket.prev = NIL;
            bucket.next = NIL;
            bucket.live = true;
            b
        } else {
            self.buckets.push(Bucket {
                key,
                head: NIL,
                prev: NIL,
                next: NIL,
                live: true,
            });
            (self.buckets.len() - 1) as u32
        }
    }

    fn retire_bucket(&mut self, b: u32) {
        let bucket = &mut self.buckets[b as usize];
        bucket.live = false;
        bucket.next = self.free_bucket;
        self.free_bucket = b;
    }

    /// Bucket for a key in the low range, created on demand.
    fn low_bucket(&mut self, key: u32) -> u32 {
        debug_assert!(key <= self.center_key + 1);
        let slot = key as usize;
        if self.low[slot] == NIL {
            let b = self.alloc_bucket(key);
            self.low[slot] = b;
        }
        self.low[slot]
    }

    /// Bucket for the smallest high key, created at the list front on demand.
    fn high_bucket_at_front(&mut self, key: u32) -> u32 {
        debug_assert_eq!(key, self.center_key + 2);
        let head = self.high_head;
        if head != NIL && self.buckets[head as usize].key == key {
            return head;
        }
        let b = self.alloc_bucket(key);
        self.push_high_front(b);
        b
    }

    /// Bucket for `key` positioned right after `after`, created on demand.
    fn high_bucket_after(&mut self, after: u32, key: u32) -> u32 {
        let next = self.buckets[after as usize].next;
        if next != NIL && self.buckets[next as usize].key == key {
            return next;
        }
        let b = self.alloc_bucket(key);
        self.buckets[b as usize].prev = after;
        self.buckets[b as usize].next = next;
        self.buckets[after as usize].next = b;
        if next != NIL {
            self.buckets[next as usize].prev = b;
        } else {
            self.high_tail = b;
        }
        b
    }

    /// Bucket for `key` positioned right before `before`, created on demand.
    fn high_bucket_before(&mut self, before: u32, key: u32) -> u32 {
        let prev = self.buckets[before as usize].prev;
        if prev != NIL && self.buckets[prev as usize].key == key {
            return prev;
        }
        let b = self.alloc_bucket(key);
        self.buckets[b as usize].next = before;
        self.buckets[b as usize].prev = prev;
        self.buckets[before as usize].prev = b;
        if prev != NIL {
            self.buckets[prev as usize].next = b;
        } else {
            self.high_head = b;
        }
        b
    }

    fn push_high_front(&mut self, b: u32) {
        let old = self.high_head;
        self.buckets[b as usize].prev = NIL;
        self.buckets[b as usize].next = old;
        if old != NIL {
            self.buckets[old as usize].prev = b;
        } else {
            self.high_tail = b;
        }
        self.high_head = b;
    }

    fn unlink_high(&mut self, b: u32) {
        let (prev, next) = {
            let bucket = &self.buckets[b as usize];
            (bucket.prev, bucket.next)
        };
        if prev != NIL {
            self.buckets[prev as usize].next = next;
        } else {
            self.high_head = next;
        }
        if next != NIL {
            self.buckets[next as usize].prev = prev;
        } else {
            self.high_tail = prev;
        }
        self.buckets[b as usize].prev = NIL;
        self.buckets[b as usize].next = NIL;
    }

    fn link_element(&mut self, slot: u32, bucket: u32) {
        let head = self.buckets[bucket as usize].head;
        {
            let elem = &mut self.elements[slot as usize];
            elem.bucket = bucket;
            elem.prev = NIL;
            elem.next = head;
        }
        if head != NIL {
            self.elements[head as usize].prev = slot;
        }
        self.buckets[bucket as usize].head = slot;
    }

    /// Unlinks an element from its bucket, retiring the bucket if it empties.
    fn unlink_element(&mut self, slot: u32) {
        let (bucket, prev, next) = {
            let elem = &self.elements[slot as usize];
            (elem.bucket, elem.prev, elem.next)
        };
        if prev != NIL {
            self.elements[prev as usize].next = next;
        } else {
            self.buckets[bucket as usize].head = next;
        }
        if next != NIL {
            self.elements[next as usize].prev = prev;
        }
        if self.buckets[bucket as usize].head == NIL {
            let key = self.buckets[bucket as usize].key;
            if key <= self.center_key + 1 {
                self.low[key as usize] = NIL;
            } else {
                self.unlink_high(bucket);
            }
            self.retire_bucket(bucket);
        }
    }
}
