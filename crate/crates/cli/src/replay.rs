//! Trace replay against either orientation variant, with optional per-op
//! checking and a stats report.
//!
//! `fast` checking runs constant-time accounting assertions per op (flip
//! bound, flip/depth bookkeeping, an event-fed degree histogram). `full`
//! adds the whole-state validators and the application checkers after every
//! operation. Replay stops at the first failed check.
//!
//! Rows for `w` ops report flips observed through the event stream (a weight
//! set may insert or delete the backing edge); query rows report zero work.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::time::Instant;

use arbor_core::apps::{AdjacencyIndex, MatVec, Matching};
use arbor_core::oracle::{arboricity_exact, theorem2_bound, StaticGraph};
use arbor_core::{
    DynamicOrientation, EdgeEvent, FaultPlan, GraphView, Observer, ObserverId, OrientedGraph,
    SpectrumConfig, SpectrumGraph, UpdateStats, Vertex,
};

use crate::stats::{OpRow, StatsReport};
use crate::trace::{Trace, TraceOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Naive,
    Spectrum,
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "naive" => Ok(Algo::Naive),
            "spectrum" => Ok(Algo::Spectrum),
            other => Err(format!("unknown algo `{other}` (expected naive or spectrum)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CheckMode {
    #[default]
    None,
    Fast,
    Full,
}

impl FromStr for CheckMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(CheckMode::None),
            "fast" => Ok(CheckMode::Fast),
            "full" => Ok(CheckMode::Full),
            other => Err(format!("unknown check mode `{other}` (expected none, fast, or full)")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReplayConfig {
    pub algo: Algo,
    pub alpha: u32,
    pub beta: f64,
    pub check: CheckMode,
    /// Vertex-count ceiling for the exponential arboricity oracle; per-op
    /// exact arboricity is recorded in stats only for traces within it.
    pub oracle_limit: usize,
    /// Seeded faults for the mutation-detection suite; all off normally.
    #[doc(hidden)]
    pub fault_plan: FaultPlan,
}

impl Default for ReplayConfig {
    fn default() -> Self {
        ReplayConfig {
            algo: Algo::Naive,
            alpha: 1,
            beta: 2.0,
            check: CheckMode::None,
            oracle_limit: 16,
            fault_plan: FaultPlan::default(),
        }
    }
}

/// Problems that make the run unusable before any invariant is in question:
/// bad parameters or a trace whose operations do not fit the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    Params(String),
    Trace { op_index: usize, detail: String },
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::Params(detail) => write!(f, "invalid parameters: {detail}"),
            ReplayError::Trace { op_index, detail } => {
                write!(f, "malformed trace at op {op_index}: {detail}")
            }
        }
    }
}

impl std::error::Error for ReplayError {}

/// A finished (or stopped) replay. `failure` carries the first failed check;
/// the report's `invariant_failures` lists it as well.
#[derive(Debug)]
pub struct ReplayOutcome {
    pub report: StatsReport,
    pub failure: Option<(usize, String)>,
}

impl ReplayOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Either orientation variant behind one replay-facing surface.
pub enum Structure {
    Naive(OrientedGraph),
    Spectrum(SpectrumGraph),
}

impl Structure {
    pub fn build(n: usize, config: &ReplayConfig) -> Result<Structure, ReplayError> {
        if !(config.beta.is_finite() && config.beta > 1.0) {
            return Err(ReplayError::Params("beta must be finite and exceed 1".into()));
        }
        if config.alpha == 0 {
            return Err(ReplayError::Params("alpha must be at least 1".into()));
        }
        match config.algo {
            Algo::Naive => OrientedGraph::new(n)
                .map(|mut g| {
                    g.set_fault_plan(config.fault_plan);
                    Structure::Naive(g)
                })
                .map_err(|e| ReplayError::Params(e.to_string())),
            Algo::Spectrum => SpectrumConfig::new(config.alpha, config.beta)
                .and_then(|c| SpectrumGraph::new(n, c))
                .map(|mut g| {
                    g.set_fault_plan(config.fault_plan);
                    Structure::Spectrum(g)
                })
                .map_err(|e| ReplayError::Params(e.to_string())),
        }
    }

    pub fn max_out_degree(&self) -> u32 {
        match self {
            Structure::Naive(g) => g.max_out_degree(),
            Structure::Spectrum(g) => g.max_out_degree(),
        }
    }

    /// Variant-appropriate whole-state validators; first issue on failure.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Structure::Naive(g) => {
                let report = g.validate_invariant2();
                if !report.passed() {
                    return Err(format!("validate_invariant2: {}", report.issues[0]));
                }
            }
            Structure::Spectrum(g) => {
                let lists = g.validate_lists();
                if !lists.passed() {
                    return Err(format!("validate_lists: {}", lists.issues[0]));
                }
                let partition = g.validate_invariant3();
                if !partition.passed() {
                    return Err(format!("validate_invariant3: {}", partition.issues[0]));
                }
            }
        }
        Ok(())
    }
}

impl DynamicOrientation for Structure {
    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, arbor_core::GraphError> {
        match self {
            Structure::Naive(g) => g.insert_edge(u, v),
            Structure::Spectrum(g) => g.insert_edge(u, v),
        }
    }

    fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateStats, arbor_core::GraphError> {
        match self {
            Structure::Naive(g) => g.delete_edge(u, v),
            Structure::Spectrum(g) => g.delete_edge(u, v),
        }
    }

    fn register_observer(&mut self, observer: Observer) -> ObserverId {
        match self {
            Structure::Naive(g) => g.register_observer(observer),
            Structure::Spectrum(g) => g.register_observer(observer),
        }
    }

    fn view(&self) -> GraphView<'_> {
        match self {
            Structure::Naive(g) => g.view(),
            Structure::Spectrum(g) => g.view(),
        }
    }
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Event-fed mirror: per-vertex degrees with a histogram, the live edge set,
/// the live weight map, and per-op event counts. Everything here is rebuilt
/// purely from the event stream, so comparing it against the structure's own
/// answers checks the events as much as the structure.
struct Tap {
    degrees: Vec<u32>,
    hist: Vec<u32>,
    max_degree: u32,
    present: HashSet<(Vertex, Vertex)>,
    weights: HashMap<(Vertex, Vertex), i64>,
    flips_this_op: u32,
    edge_ops_this_op: u32,
    edges_dirty: bool,
}

impl Tap {
    fn new(n: usize) -> Tap {
        let mut hist = vec![0u32; n + 1];
        hist[0] = n as u32;
        Tap {
            degrees: vec![0; n],
            hist,
            max_degree: 0,
            present: HashSet::new(),
            weights: HashMap::new(),
            flips_this_op: 0,
            edge_ops_this_op: 0,
            edges_dirty: false,
        }
    }

    fn raise(&mut self, u: Vertex) {
        let d = self.degrees[u as usize];
        self.hist[d as usize] -= 1;
        self.hist[d as usize + 1] += 1;
        self.degrees[u as usize] = d + 1;
        self.max_degree = self.max_degree.max(d + 1);
    }

    fn lower(&mut self, u: Vertex) {
        let d = self.degrees[u as usize];
        self.hist[d as usize] -= 1;
        self.hist[d as usize - 1] += 1;
        self.degrees[u as usize] = d - 1;
        while self.max_degree > 0 && self.hist[self.max_degree as usize] == 0 {
            self.max_degree -= 1;
        }
    }

    fn on_event(&mut self, event: EdgeEvent) {
        match event {
            EdgeEvent::Added { from, to } => {
                self.raise(from);
                self.present.insert(key(from, to));
                self.edge_ops_this_op += 1;
                self.edges_dirty = true;
            }
            EdgeEvent::Removed { from, to } => {
                self.lower(from);
                self.present.remove(&key(from, to));
                self.weights.remove(&key(from, to));
                self.edge_ops_this_op += 1;
                self.edges_dirty = true;
            }
            EdgeEvent::Flipped { from, to } => {
                self.raise(from);
                self.lower(to);
                self.flips_this_op += 1;
            }
        }
    }
}

struct Checker {
    mode: CheckMode,
    tap: Rc<RefCell<Tap>>,
    matching: Matching,
    adjacency: AdjacencyIndex,
    matvec: MatVec,
    x: Vec<i64>,
    diagonal: Vec<i64>,
    run_max_degree: u32,
}

impl Checker {
    /// Constant-time accounting: flip/depth bookkeeping, the flip bound
    /// against the run's maximum degree, and event/stats agreement.
    fn fast(&mut self, structure: &Structure, flips: u32, depth: u32) -> Result<(), String> {
        let (tap_flips, tap_max) = {
            let tap = self.tap.borrow();
            (tap.flips_this_op, tap.max_degree)
        };
        if depth > 0 && flips + 1 != depth {
            return Err(format!("recursion depth {depth} does not account for {flips} flips"));
        }
        self.run_max_degree = self.run_max_degree.max(structure.max_out_degree());
        if flips > self.run_max_degree + 1 {
            return Err(format!(
                "{flips} flips exceed the run maximum degree {} + 1",
                self.run_max_degree
            ));
        }
        if tap_flips != flips {
            return Err(format!("event stream saw {tap_flips} flips, stats say {flips}"));
        }
        if tap_max != structure.max_out_degree() {
            return Err(format!(
                "event-fed histogram max {tap_max} disagrees with the structure's {}",
                structure.max_out_degree()
            ));
        }
        Ok(())
    }

    /// Whole-state audits: validators, matching, adjacency, edge set.
    fn full(&mut self, structure: &Structure) -> Result<(), String> {
        structure.validate()?;
        self.matching.check(structure.view()).map_err(|e| format!("matching: {e}"))?;
        let tap = self.tap.borrow();
        let view = structure.view();
        if view.edge_count() != tap.present.len() {
            return Err(format!(
                "event-fed edge set has {} edges, the structure {}",
                tap.present.len(),
                view.edge_count()
            ));
        }
        for u in 0..view.vertex_count() {
            let mut expected: Vec<Vertex> = view.out_neighbors(u).collect();
            expected.sort_unstable();
            if self.adjacency.out_neighbors(u) != expected {
                return Err(format!("adjacency index of {u} diverged from the out-list"));
            }
            if tap.degrees[u as usize] != view.out_degree(u) {
                return Err(format!("event-fed degree of {u} diverged"));
            }
        }
        Ok(())
    }

    fn expected_coordinate(&self, i: Vertex) -> i64 {
        let tap = self.tap.borrow();
        let mut y = self.diagonal[i as usize] * self.x[i as usize];
        for (&(a, b), &w) in &tap.weights {
            if a == i {
                y += w * self.x[b as usize];
            } else if b == i {
                y += w * self.x[a as usize];
            }
        }
        y
    }
}

/// Replays `trace` on a freshly built structure. Trace-level problems
/// (unknown vertices handled at parse; here: duplicate inserts, deletes of
/// absent edges) return `ReplayError::Trace`; failed checks stop the run and
/// surface in the outcome.
pub fn replay(trace: &Trace, config: &ReplayConfig) -> Result<ReplayOutcome, ReplayError> {
    let n = trace.n;
    let mut structure = Structure::build(n, config)?;
    let tap = Rc::new(RefCell::new(Tap::new(n)));
    {
        let tap = Rc::clone(&tap);
        structure.register_observer(Box::new(move |_view, event| {
            tap.borrow_mut().on_event(event);
        }));
    }
    let mut checker = Checker {
        mode: config.check,
        tap: Rc::clone(&tap),
        matching: Matching::attach(&mut structure),
        adjacency: AdjacencyIndex::attach(&mut structure),
        matvec: MatVec::attach(&mut structure),
        x: vec![0; n],
        diagonal: vec![0; n],
        run_max_degree: 0,
    };

    let bound = theorem2_bound(config.alpha, config.beta, n);
    let mut report = StatsReport {
        bound,
        bound_satisfied: true,
        ..StatsReport::default()
    };
    let record_alpha = n <= config.oracle_limit;
    let mut cached_alpha: Option<u32> = None;

    for (op_index, &op) in trace.ops.iter().enumerate() {
        {
            let mut tap = tap.borrow_mut();
            tap.flips_this_op = 0;
            tap.edge_ops_this_op = 0;
        }
        let trace_err = |detail: String| ReplayError::Trace { op_index, detail };
        let started = Instant::now();

        // (flips, recursion_depth, elapsed_ns) per row; queries report zero
        // work, weight sets report the implicit edge op seen by the tap.
        let mut check_failure: Option<String> = None;
        let (flips, depth, elapsed_ns) = match op {
            TraceOp::Insert(u, v) => {
                let stats = structure.insert_edge(u, v).map_err(|e| trace_err(e.to_string()))?;
                (stats.flips, stats.recursion_depth, stats.elapsed.as_nanos() as u64)
            }
            TraceOp::Delete(u, v) => {
                let stats = structure.delete_edge(u, v).map_err(|e| trace_err(e.to_string()))?;
                (stats.flips, stats.recursion_depth, stats.elapsed.as_nanos() as u64)
            }
            TraceOp::AdjacencyQuery(u, v) => {
                let answer = self::query_adjacency(&checker, u, v).map_err(trace_err)?;
                if checker.mode == CheckMode::Full
                    && answer != tap.borrow().present.contains(&key(u, v))
                {
                    check_failure = Some(format!("adjacency query ({u}, {v}) answered {answer}"));
                }
                (0, 0, started.elapsed().as_nanos() as u64)
            }
            TraceOp::MatchingSize => {
                let _ = checker.matching.size();
                (0, 0, started.elapsed().as_nanos() as u64)
            }
            TraceOp::SetWeight(i, j, w) => {
                checker
                    .matvec
                    .set_weight(&mut structure, i, j, w)
                    .map_err(|e| trace_err(e.to_string()))?;
                if i == j {
                    checker.diagonal[i as usize] = w;
                } else if w != 0 {
                    tap.borrow_mut().weights.insert(key(i, j), w);
                }
                let tap = tap.borrow();
                let flips = tap.flips_this_op;
                let depth = if tap.edge_ops_this_op > 0 { flips + 1 } else { 0 };
                (flips, depth, started.elapsed().as_nanos() as u64)
            }
            TraceOp::SetX(j, value) => {
                checker
                    .matvec
                    .set_x(&structure, j, value)
                    .map_err(|e| trace_err(e.to_string()))?;
                checker.x[j as usize] = value;
                (0, 0, started.elapsed().as_nanos() as u64)
            }
            TraceOp::CoordinateQuery(i) => {
                let y = checker.matvec.query(&structure, i).map_err(|e| trace_err(e.to_string()))?;
                if checker.mode == CheckMode::Full {
                    let expected = checker.expected_coordinate(i);
                    if y != expected {
                        check_failure =
                            Some(format!("coordinate {i} is {y}, recomputation says {expected}"));
                    }
                }
                (0, 0, started.elapsed().as_nanos() as u64)
            }
        };

        if check_failure.is_none() && checker.mode != CheckMode::None {
            check_failure = checker.fast(&structure, flips, depth).err();
        }
        if check_failure.is_none() && checker.mode == CheckMode::Full {
            check_failure = checker.full(&structure).err();
        }

        let max_out_degree_after = structure.max_out_degree();
        let alpha_exact = if record_alpha {
            let dirty = std::mem::take(&mut tap.borrow_mut().edges_dirty);
            if dirty || cached_alpha.is_none() {
                let snapshot =
                    StaticGraph::new(n, structure.view().edges().map(|(u, v)| key(u, v)));
                cached_alpha = Some(
                    arboricity_exact(&snapshot, config.oracle_limit)
                        .expect("n is within the oracle limit"),
                );
            }
            cached_alpha
        } else {
            None
        };

        report.rows.push(OpRow {
            op_index,
            kind: op.kind(),
            flips,
            recursion_depth: depth,
            max_out_degree_after,
            elapsed_ns,
            alpha_exact,
        });
        report.max_flips = report.max_flips.max(flips);
        report.max_out_degree = report.max_out_degree.max(max_out_degree_after);
        if f64::from(max_out_degree_after) > bound {
            report.bound_satisfied = false;
        }

        if let Some(detail) = check_failure {
            report.invariant_failures.push(format!("{op_index} {detail}"));
            return Ok(ReplayOutcome { report, failure: Some((op_index, detail)) });
        }
    }

    Ok(ReplayOutcome { report, failure: None })
}

fn query_adjacency(checker: &Checker, u: Vertex, v: Vertex) -> Result<bool, String> {
    checker.adjacency.adjacent(u, v).map_err(|e| e.to_string())
}
