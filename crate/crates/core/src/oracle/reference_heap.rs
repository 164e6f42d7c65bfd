//! Linear-scan replica of [`NeighborHeap`]'s observable behavior.
//!
//! Elements live in a flat vector and every operation rescans it. Used as the
//! trusted side of differential tests: same keys, same errors, same restricted
//! `report_max` semantics, none of the bucket machinery.

use crate::neighbor_heap::HeapError;
use crate::Vertex;

#[derive(Clone, Debug, Default)]
pub struct ReferenceHeap {
    center_key: u32,
    items: Vec<(Vertex, u32)>,
}

impl ReferenceHeap {
    pub fn new(center_key: u32) -> Self {
        ReferenceHeap {
            center_key,
            items: Vec::new(),
        }
    }

    pub fn center_key(&self) -> u32 {
        self.center_key
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn insert(&mut self, id: Vertex, key: u32) -> Result<(), HeapError> {
        if key > self.center_key + 1 {
            return Err(HeapError::KeyTooHigh {
                key,
                center: self.center_key,
            });
        }
        if self.items.iter().any(|&(i, _)| i == id) {
            return Err(HeapError::DuplicateId(id));
        }
        self.items.push((id, key));
        Ok(())
    }

    pub fn delete(&mut self, id: Vertex) -> Result<(), HeapError> {
        let pos = self.position(id)?;
        self.items.remove(pos);
        Ok(())
    }

    pub fn increment(&mut self, id: Vertex) -> Result<(), HeapError> {
        let pos = self.position(id)?;
        self.items[pos].1 += 1;
        Ok(())
    }

    pub fn decrement(&mut self, id: Vertex) -> Result<(), HeapError> {
        let pos = self.position(id)?;
        if self.items[pos].1 == 0 {
            return Err(HeapError::DecrementBelowZero);
        }
        self.items[pos].1 -= 1;
        Ok(())
    }

    pub fn increment_center(&mut self) {
        self.center_key += 1;
    }

    pub fn decrement_center(&mut self) -> Result<(), HeapError> {
        if self.center_key == 0 {
            return Err(HeapError::CenterBelowZero);
        }
        self.center_key -= 1;
        Ok(())
    }

    /// Maximum key reached by any element, provided it is at least
    /// `center_key + 2`, together with every element id holding it.
    pub fn report_max(&self) -> Option<(u32, Vec<Vertex>)> {
        let max = self.items.iter().map(|&(_, k)| k).max()?;
        if max < self.center_key + 2 {
            return None;
        }
        let ids = self
            .items
            .iter()
            .filter(|&&(_, k)| k == max)
            .map(|&(i, _)| i)
            .collect();
        Some((max, ids))
    }

    pub fn key_of(&self, id: Vertex) -> Option<u32> {
        self.items.iter().find(|&&(i, _)| i == id).map(|&(_, k)| k)
    }

    /// Sorted `(id, key)` pairs, for multiset comparison.
    pub fn multiset(&self) -> Vec<(Vertex, u32)> {
        let mut items = self.items.clone();
        items.sort_unstable();
        items
    }

    fn position(&self, id: Vertex) -> Result<usize, HeapError> {
        self.items
            .iter()
            .position(|&(i, _)| i == id)
            .ok_or(HeapError::StaleHandle)
    }
}
