//! Exhaustive adversarial enumeration. Over every update sequence on a tiny
//! vertex set, both real structures are stepped next to their replicas and
//! audited after every operation: structural validators, flip accounting,
//! the degree bound, and exact agreement with the replays (orientation,
//! list orders, flip counts). Any discrepancy is returned as a violation
//! with the offending op sequence.

use std::fmt;

use crate::graph::spectrum::{SpectrumConfig, SpectrumGraph};
use crate::graph::OrientedGraph;
use crate::{UpdateStats, Vertex};

use super::replica::{NaiveReplica, ReplayOutcome, SpectrumReplica};
use super::{arboricity_exact, theorem2_bound, OracleError, StaticGraph};

const MAX_EXHAUSTIVE_N: usize = 6;
const MAX_EXHAUSTIVE_OPS: usize = 10;
const KEPT_VIOLATIONS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateOp {
    Insert(Vertex, Vertex),
    Delete(Vertex, Vertex),
}

impl fmt::Display for UpdateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateOp::Insert(u, v) => write!(f, "+ {u} {v}"),
            UpdateOp::Delete(u, v) => write!(f, "- {u} {v}"),
        }
    }
}

/// An op sequence whose final update maximized flips for one variant.
#[derive(Clone, Debug)]
pub struct Witness {
    pub n: usize,
    pub ops: Vec<UpdateOp>,
    /// Flips of the final update.
    pub flips: u32,
    /// Largest out-degree seen anywhere along the sequence.
    pub max_out_degree: u32,
}

#[derive(Debug, Default)]
pub struct SearchOutcome {
    /// Operations applied across all explored sequences.
    pub operations: u64,
    /// First few violation descriptions; empty on a clean search.
    pub violations: Vec<String>,
    /// Count of violations beyond the kept ones.
    pub suppressed_violations: u64,
    pub best_naive: Option<Witness>,
    pub best_spectrum: Option<Witness>,
}

impl SearchOutcome {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.suppressed_violations == 0
    }
}

/// Walks every update sequence of length `max_ops` on `2..=max_n` vertices
/// (at each step, every absent pair may be inserted and every present pair
/// deleted) and audits both variants after every operation.
///
/// Cost is `(n(n-1)/2)^max_ops` per vertex count; n = 4, ops = 8 is around
/// two million sequences and a few seconds. The hard caps (n at most 6, ops
/// at most 10) mark where exhaustion stops being a desk-scale affair.
pub fn adversarial_search(max_n: usize, max_ops: usize) -> Result<SearchOutcome, OracleError> {
    if max_n > MAX_EXHAUSTIVE_N {
        return Err(OracleError::TooLarge { n: max_n, limit: MAX_EXHAUSTIVE_N });
    }
    if max_n < 2 {
        return Err(OracleError::InvalidParams("need at least two vertices".into()));
    }
    if max_ops == 0 || max_ops > MAX_EXHAUSTIVE_OPS {
        return Err(OracleError::InvalidParams(format!(
            "op budget must be in 1..={MAX_EXHAUSTIVE_OPS}"
        )));
    }
    let mut outcome = SearchOutcome::default();
    for n in 2..=max_n {
        // Provision the windowed variant for the densest graph possible on
        // n vertices, so its degree guarantee applies along every sequence.
        let alpha_cap = (n as u32).div_ceil(2);
        let config = SpectrumConfig::new(alpha_cap, 2.0).expect("valid search config");
        let mut search = Search {
            n,
            config,
            pairs: pair_list(n),
            ops: Vec::with_capacity(max_ops),
            outcome: &mut outcome,
        };
        let state = State {
            naive: OrientedGraph::new(n).expect("search graph size"),
            spectrum: SpectrumGraph::new(n, config).expect("search graph size"),
            naive_replica: NaiveReplica::new(n),
            spectrum_replica: SpectrumReplica::new(n, config.gamma()),
        };
        search.explore(&state, max_ops, 0, 0);
    }
    Ok(outcome)
}

fn pair_list(n: usize) -> Vec<(Vertex, Vertex)> {
    let mut pairs = Vec::new();
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            pairs.push((u, v));
        }
    }
    pairs
}

#[derive(Clone)]
struct State {
    naive: OrientedGraph,
    spectrum: SpectrumGraph,
    naive_replica: NaiveReplica,
    spectrum_replica: SpectrumReplica,
}

struct Search<'a> {
    n: usize,
    config: SpectrumConfig,
    pairs: Vec<(Vertex, Vertex)>,
    ops: Vec<UpdateOp>,
    outcome: &'a mut SearchOutcome,
}

impl Search<'_> {
    fn explore(&mut self, state: &State, budget: usize, run_max_naive: u32, run_max_spectrum: u32) {
        for i in 0..self.pairs.len() {
            let (u, v) = self.pairs[i];
            let present = state.naive.contains_edge(u, v);
            let op = if present { UpdateOp::Delete(u, v) } else { UpdateOp::Insert(u, v) };
            let mut next = state.clone();
            let (stats_n, stats_s, rep_n, rep_s) = if present {
                (
                    next.naive.delete_edge(u, v).expect("present edge deletes"),
                    next.spectrum.delete_edge(u, v).expect("present edge deletes"),
                    next.naive_replica.delete(u, v),
                    next.spectrum_replica.delete(u, v),
                )
            } else {
                (
                    next.naive.insert_edge(u, v).expect("absent edge inserts"),
                    next.spectrum.insert_edge(u, v).expect("absent edge inserts"),
                    next.naive_replica.insert(u, v),
                    next.spectrum_replica.insert(u, v),
                )
            };
            self.ops.push(op);
            self.outcome.operations += 1;
            let run_n = run_max_naive.max(stats_n.max_out_degree_after);
            let run_s = run_max_spectrum.max(stats_s.max_out_degree_after);
            self.audit(&next, &stats_n, &stats_s, &rep_n, &rep_s, run_n, run_s);
            self.crown(stats_n.flips, run_n, stats_s.flips, run_s);
            if budget > 1 {
                self.explore(&next, budget - 1, run_n, run_s);
            }
            self.ops.pop();
        }
    }

    fn crown(&mut self, naive_flips: u32, run_n: u32, spectrum_flips: u32, run_s: u32) {
        let better = |best: &Option<Witness>, flips: u32| match best {
            Some(w) => flips > w.flips,
            None => true,
        };
        if better(&self.outcome.best_naive, naive_flips) {
            self.outcome.best_naive = Some(Witness {
                n: self.n,
                ops: self.ops.clone(),
                flips: naive_flips,
                max_out_degree: run_n,
            });
        }
        if better(&self.outcome.best_spectrum, spectrum_flips) {
            self.outcome.best_spectrum = Some(Witness {
                n: self.n,
                ops: self.ops.clone(),
                flips: spectrum_flips,
                max_out_degree: run_s,
            });
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn audit(
        &mut self,
        state: &State,
        stats_n: &UpdateStats,
        stats_s: &UpdateStats,
        rep_n: &ReplayOutcome,
        rep_s: &ReplayOutcome,
        run_max_naive: u32,
        run_max_spectrum: u32,
    ) {
        let naive_report = state.naive.validate_invariant2();
        if !naive_report.passed() {
            self.violation(format!("baseline validator: {naive_report}"));
        }
        let lists_report = state.spectrum.validate_lists();
        if !lists_report.passed() {
            self.violation(format!("list validator: {lists_report}"));
        }
        let partition_report = state.spectrum.validate_invariant3();
        if !partition_report.passed() {
            self.violation(format!("partition validator: {partition_report}"));
        }

        if stats_n.flips + 1 != stats_n.recursion_depth {
            self.violation(format!(
                "baseline flip accounting: {} flips, depth {}",
                stats_n.flips, stats_n.recursion_depth
            ));
        }
        if stats_s.flips + 1 != stats_s.recursion_depth {
            self.violation(format!(
                "windowed flip accounting: {} flips, depth {}",
                stats_s.flips, stats_s.recursion_depth
            ));
        }
        if stats_n.flips > run_max_naive + 1 {
            self.violation(format!(
                "baseline flip bound: {} flips, run max degree {run_max_naive}",
                stats_n.flips
            ));
        }
        if stats_s.flips > run_max_spectrum + 1 {
            self.violation(format!(
                "windowed flip bound: {} flips, run max degree {run_max_spectrum}",
                stats_s.flips
            ));
        }

        if stats_n.flips != rep_n.flips || stats_n.recursion_depth != rep_n.recursion_depth {
            self.violation(format!(
                "baseline replica flips diverge: real {}/{}, replica {}/{}",
                stats_n.flips, stats_n.recursion_depth, rep_n.flips, rep_n.recursion_depth
            ));
        }
        if stats_s.flips != rep_s.flips || stats_s.recursion_depth != rep_s.recursion_depth {
            self.violation(format!(
                "windowed replica flips diverge: real {}/{}, replica {}/{}",
                stats_s.flips, stats_s.recursion_depth, rep_s.flips, rep_s.recursion_depth
            ));
        }
        for u in 0..self.n as Vertex {
            let real: Vec<Vertex> = state.naive.view().out_neighbors(u).collect();
            if real != state.naive_replica.out_list(u) {
                self.violation(format!(
                    "baseline list of {u} diverges: real {real:?}, replica {:?}",
                    state.naive_replica.out_list(u)
                ));
            }
            let real: Vec<Vertex> = state.spectrum.view().out_neighbors(u).collect();
            if real != state.spectrum_replica.out_list(u) {
                self.violation(format!(
                    "windowed list of {u} diverges: real {real:?}, replica {:?}",
                    state.spectrum_replica.out_list(u)
                ));
            }
        }

        let snapshot = StaticGraph::new(self.n, state.naive.view().edges().map(ordered));
        let alpha_true =
            arboricity_exact(&snapshot, MAX_EXHAUSTIVE_N).expect("search graphs fit the oracle");
        let naive_bound = theorem2_bound(alpha_true, 2.0, self.n);
        if f64::from(state.naive.max_out_degree()) > naive_bound {
            self.violation(format!(
                "baseline degree bound: max degree {} over bound {naive_bound}",
                state.naive.max_out_degree()
            ));
        }
        let spectrum_bound = theorem2_bound(self.config.alpha, self.config.beta, self.n);
        if f64::from(state.spectrum.max_out_degree()) > spectrum_bound {
            self.violation(format!(
                "windowed degree bound: max degree {} over bound {spectrum_bound}",
                state.spectrum.max_out_degree()
            ));
        }
    }

    fn violation(&mut self, detail: String) {
        if self.outcome.violations.len() < KEPT_VIOLATIONS {
            let ops: Vec<String> = self.ops.iter().map(|op| op.to_string()).collect();
            self.outcome
                .violations
                .push(format!("n={} after [{}]: {detail}", self.n, ops.join("; ")));
        } else {
            self.outcome.suppressed_violations += 1;
        }
    }
}

fn ordered((u, v): (Vertex, Vertex)) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
