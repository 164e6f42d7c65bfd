//! Full-state audits. These run in O(n + m) or worse and exist for tests,
//! debugging, and the CLI's checked replay mode, not for the hot path.

use std::fmt;

use thiserror::Error;

use crate::{Vertex, NIL};

use super::core::{pair_key, GraphCore};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ValidationIssue {
    /// Bookkeeping disagrees with itself (lists vs. degrees vs. edge index
    /// vs. heaps vs. histogram).
    #[error("structure: {0}")]
    Structure(String),
    /// A directed edge (from, to) with dg(from) > dg(to) + 1.
    #[error("edge ({from}, {to}) violated: dg({from}) = {from_degree} > {to_degree} + 1 = dg({to}) + 1")]
    ViolatedEdge { from: Vertex, to: Vertex, from_degree: u32, to_degree: u32 },
    /// A list entry fails the validity rank its block demands.
    #[error("list of {vertex}: position {position} (block {block}) points at {target} with dg {target_degree}, needs at least dg({vertex}) - {block} = {vertex_degree} - {block}")]
    BlockViolation {
        vertex: Vertex,
        position: u32,
        block: u32,
        target: Vertex,
        target_degree: u32,
        vertex_degree: u32,
    },
    /// Even the best-case block assignment (out-neighbor degrees sorted in
    /// descending order) cannot satisfy the per-block validity ranks.
    #[error("out-edges of {vertex} admit no valid block partition: rank {rank} has degree {target_degree}, block {block} needs at least {vertex_degree} - {block}")]
    PartitionViolation {
        vertex: Vertex,
        rank: u32,
        block: u32,
        target_degree: u32,
        vertex_degree: u32,
    },
}

#[derive(Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() && self.warnings.is_empty() {
            return write!(f, "ok");
        }
        for issue in &self.issues {
            writeln!(f, "issue: {issue}")?;
        }
        for warning in &self.warnings {
            writeln!(f, "warning: {warning}")?;
        }
        Ok(())
    }
}

fn structure(report: &mut ValidationReport, detail: String) {
    report.issues.push(ValidationIssue::Structure(detail));
}

/// Cross-checks every piece of bookkeeping against the others. Any failure
/// here is a bug in the maintenance code, not a property of the graph.
pub(crate) fn check_structure(core: &GraphCore) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = core.vertex_count();

    let mut degree_sum = 0usize;
    for u in 0..n {
        let list = &core.lists[u as usize];
        let mut count = 0u32;
        let mut cursor = list.head;
        let mut prev = NIL;
        while cursor != NIL {
            let node = &core.nodes[cursor as usize];
            if node.prev != prev {
                structure(&mut report, format!("list of {u}: broken prev link at node {cursor}"));
                break;
            }
            if node.to >= n {
                structure(&mut report, format!("list of {u}: node {cursor} points at unknown vertex {}", node.to));
                break;
            }
            match core.edges.get(&pair_key(u, node.to)) {
                None => structure(
                    &mut report,
                    format!("list of {u}: edge {{{u}, {}}} missing from the index", node.to),
                ),
                Some(slot) => {
                    if slot.from != u || slot.node != cursor {
                        structure(
                            &mut report,
                            format!(
                                "edge {{{u}, {}}}: index says from {} node {}, list says from {u} node {cursor}",
                                node.to, slot.from, slot.node
                            ),
                        );
                    }
                }
            }
            match core.heaps[node.to as usize].id_of(node.handle) {
                Ok(id) if id == u => {}
                other => structure(
                    &mut report,
                    format!("edge ({u}, {}): heap entry resolves to {other:?}, expected {u}", node.to),
                ),
            }
            match core.heaps[node.to as usize].key_of(node.handle) {
                Ok(key) if key == core.deg(u) => {}
                other => structure(
                    &mut report,
                    format!(
                        "edge ({u}, {}): heap key is {other:?}, expected dg({u}) = {}",
                        node.to,
                        core.deg(u)
                    ),
                ),
            }
            count += 1;
            prev = cursor;
            cursor = node.next;
            if count > list.len {
                structure(&mut report, format!("list of {u}: walk exceeds recorded length {}", list.len));
                break;
            }
        }
        if list.tail != prev {
            structure(&mut report, format!("list of {u}: tail is {} but walk ended at {prev}", list.tail));
        }
        if count != list.len {
            structure(&mut report, format!("list of {u}: walked {count} nodes, recorded length {}", list.len));
        }
        if list.len != core.deg(u) {
            structure(&mut report, format!("vertex {u}: list length {} != degree {}", list.len, core.deg(u)));
        }
        degree_sum += core.deg(u) as usize;
    }

    if degree_sum != core.edges.len() {
        structure(
            &mut report,
            format!("degree sum {degree_sum} != edge count {}", core.edges.len()),
        );
    }

    let mut in_degrees = vec![0usize; n as usize];
    for slot in core.edges.values() {
        in_degrees[core.nodes[slot.node as usize].to as usize] += 1;
    }
    for w in 0..n {
        let heap = &core.heaps[w as usize];
        if heap.center_id() != w {
            structure(&mut report, format!("heap of {w}: center id is {}", heap.center_id()));
        }
        if heap.center_key() != core.deg(w) {
            structure(
                &mut report,
                format!("heap of {w}: center key {} != degree {}", heap.center_key(), core.deg(w)),
            );
        }
        if heap.len() != in_degrees[w as usize] {
            structure(
                &mut report,
                format!("heap of {w}: {} entries, {} in-edges", heap.len(), in_degrees[w as usize]),
            );
        }
        for (id, key) in heap.iter() {
            let known = core
                .edges
                .get(&pair_key(id, w))
                .is_some_and(|slot| slot.from == id && core.nodes[slot.node as usize].to == w);
            if !known {
                structure(&mut report, format!("heap of {w}: entry {id} has no matching edge"));
            }
            if key != core.deg(id) {
                structure(
                    &mut report,
                    format!("heap of {w}: entry {id} has key {key}, degree is {}", core.deg(id)),
                );
            }
        }
        if let Err(detail) = heap.validate_structure() {
            structure(&mut report, format!("heap of {w}: {detail}"));
        }
    }

    let mut max_degree = 0;
    let mut counts = vec![0u32; core.hist.max() as usize + 1];
    for u in 0..n {
        let d = core.deg(u);
        max_degree = max_degree.max(d);
        if (d as usize) < counts.len() {
            counts[d as usize] += 1;
        }
    }
    if core.hist.max() != max_degree {
        structure(
            &mut report,
            format!("histogram max {} != actual max degree {max_degree}", core.hist.max()),
        );
    }
    for (d, &expected) in counts.iter().enumerate() {
        if core.hist.count_at(d as u32) != expected {
            structure(
                &mut report,
                format!("histogram count at {d} is {}, expected {expected}", core.hist.count_at(d as u32)),
            );
        }
    }

    report
}

/// Every directed edge must keep its tail within one of its head.
pub(crate) fn check_edge_invariant(core: &GraphCore, report: &mut ValidationReport) {
    for slot in core.edges.values() {
        let from = slot.from;
        let to = core.nodes[slot.node as usize].to;
        if core.deg(from) > core.deg(to) + 1 {
            report.issues.push(ValidationIssue::ViolatedEdge {
                from,
                to,
                from_degree: core.deg(from),
                to_degree: core.deg(to),
            });
        }
    }
}

/// Positional block validity: entry at position p (1-based) of a list sits in
/// block ceil(p / gamma) and must be that rank valid.
pub(crate) fn check_lists(core: &GraphCore, gamma: u32, report: &mut ValidationReport) {
    for u in 0..core.vertex_count() {
        let mut cursor = core.lists[u as usize].head;
        let mut position = 0u32;
        while cursor != NIL {
            position += 1;
            let node = &core.nodes[cursor as usize];
            let block = position.div_ceil(gamma);
            if core.deg(node.to) + block < core.deg(u) {
                report.issues.push(ValidationIssue::BlockViolation {
                    vertex: u,
                    position,
                    block,
                    target: node.to,
                    target_degree: core.deg(node.to),
                    vertex_degree: core.deg(u),
                });
            }
            cursor = node.next;
        }
    }
}

/// Order-free form of the block condition: sort each vertex's out-neighbor
/// degrees in descending order and fill blocks greedily. If that assignment
/// fails, no list order can satisfy the blocks.
pub(crate) fn check_greedy_partition(core: &GraphCore, gamma: u32, report: &mut ValidationReport) {
    for u in 0..core.vertex_count() {
        let mut degrees: Vec<u32> = Vec::with_capacity(core.deg(u) as usize);
        let mut cursor = core.lists[u as usize].head;
        while cursor != NIL {
            let node = &core.nodes[cursor as usize];
            degrees.push(core.deg(node.to));
            cursor = node.next;
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &d) in degrees.iter().enumerate() {
            let block = i as u32 / gamma + 1;
            if d + block < core.deg(u) {
                report.issues.push(ValidationIssue::PartitionViolation {
                    vertex: u,
                    rank: i as u32 + 1,
                    block,
                    target_degree: d,
                    vertex_degree: core.deg(u),
                });
            }
        }
    }
}
