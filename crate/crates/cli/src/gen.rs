//! Seeded workload generators. Every generator is deterministic in its
//! parameters and emits only legal traces (inserts of absent edges, deletes
//! of present ones).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use arbor_core::Vertex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::trace::{Trace, TraceOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Workload {
    /// Keeps every edge inside one of `alpha` edge-disjoint forests, so the
    /// arboricity never exceeds `alpha` at any step.
    ForestUnion,
    /// Inserts random edges and deletes the oldest one beyond a window of
    /// `alpha * (n - 1) / 2` live edges.
    SlidingWindow,
    /// Builds stars around `alpha` hub vertices, then tears them down again,
    /// cycling for as many ops as requested.
    StarChurn,
}

impl FromStr for Workload {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        match s {
            "forest-union" => Ok(Workload::ForestUnion),
            "sliding-window" => Ok(Workload::SlidingWindow),
            "star-churn" => Ok(Workload::StarChurn),
            other => Err(GenError(format!(
                "unknown kind `{other}` (expected forest-union, sliding-window, or star-churn)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenError(pub String);

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid parameters: {}", self.0)
    }
}

impl std::error::Error for GenError {}

pub fn generate(
    kind: Workload,
    n: usize,
    alpha: u32,
    ops: usize,
    seed: u64,
) -> Result<Trace, GenError> {
    if n < 2 {
        return Err(GenError(format!("n = {n}, need at least 2 vertices")));
    }
    if alpha == 0 {
        return Err(GenError("alpha must be at least 1".into()));
    }
    if ops == 0 {
        return Err(GenError("ops must be at least 1".into()));
    }
    let ops = match kind {
        Workload::ForestUnion => forest_union(n, alpha, ops, seed),
        Workload::SlidingWindow => sliding_window(n, alpha, ops, seed),
        Workload::StarChurn => star_churn(n, alpha, ops)?,
    };
    Ok(Trace { n, ops })
}

/// Union-find over one forest's live edges. Deletions leave it stale in the
/// conservative direction (it may report a cycle that is no longer there,
/// never the reverse), so the forest stays acyclic; rebuilds restore
/// precision.
struct Forest {
    parent: Vec<u32>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Forest {
    fn new(n: usize) -> Forest {
        Forest { parent: (0..n as u32).collect(), edges: Vec::new() }
    }

    fn find(&mut self, u: u32) -> u32 {
        let mut root = u;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cursor = u;
        while cursor != root {
            cursor = std::mem::replace(&mut self.parent[cursor as usize], root);
        }
        root
    }

    fn try_add(&mut self, u: Vertex, v: Vertex) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        self.parent[ru as usize] = rv;
        self.edges.push(if u < v { (u, v) } else { (v, u) });
        true
    }

    fn rebuild(&mut self) {
        for (i, slot) in self.parent.iter_mut().enumerate() {
            *slot = i as u32;
        }
        let edges = std::mem::take(&mut self.edges);
        for (u, v) in edges {
            let added = self.try_add(u, v);
            debug_assert!(added, "live forest edges are acyclic");
        }
    }
}

fn forest_union(n: usize, alpha: u32, ops: usize, seed: u64) -> Vec<TraceOp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut forests: Vec<Forest> = (0..alpha).map(|_| Forest::new(n)).collect();
    let mut present: HashSet<(Vertex, Vertex)> = HashSet::new();
    // (edge, owning forest), in no particular order.
    let mut live: Vec<((Vertex, Vertex), usize)> = Vec::new();
    let mut stale_deletes = 0usize;
    let mut out = Vec::with_capacity(ops);

    let try_insert =
        |rng: &mut ChaCha8Rng,
         forests: &mut Vec<Forest>,
         present: &mut HashSet<(Vertex, Vertex)>,
         live: &mut Vec<((Vertex, Vertex), usize)>| {
            for _ in 0..32 {
                let u = rng.gen_range(0..n as Vertex);
                let v = rng.gen_range(0..n as Vertex);
                let key = if u < v { (u, v) } else { (v, u) };
                if u == v || present.contains(&key) {
                    continue;
                }
                let start = rng.gen_range(0..forests.len());
                for offset in 0..forests.len() {
                    let f = (start + offset) % forests.len();
                    if forests[f].try_add(key.0, key.1) {
                        present.insert(key);
                        live.push((key, f));
                        return Some(TraceOp::Insert(key.0, key.1));
                    }
                }
            }
            None
        };

    while out.len() < ops {
        let want_insert = live.is_empty() || rng.gen_bool(0.55);
        if want_insert {
            if let Some(op) = try_insert(&mut rng, &mut forests, &mut present, &mut live) {
                out.push(op);
                continue;
            }
            // Staleness or genuine saturation; refresh and retry once before
            // falling back to a delete.
            for forest in &mut forests {
                forest.rebuild();
            }
            stale_deletes = 0;
            if let Some(op) = try_insert(&mut rng, &mut forests, &mut present, &mut live) {
                out.push(op);
                continue;
            }
        }
        if live.is_empty() {
            continue;
        }
        let slot = rng.gen_range(0..live.len());
        let ((u, v), f) = live.swap_remove(slot);
        present.remove(&(u, v));
        forests[f].edges.retain(|&e| e != (u, v));
        out.push(TraceOp::Delete(u, v));
        stale_deletes += 1;
        if stale_deletes >= n {
            for forest in &mut forests {
                forest.rebuild();
            }
            stale_deletes = 0;
        }
    }
    out
}

fn sliding_window(n: usize, alpha: u32, ops: usize, seed: u64) -> Vec<TraceOp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = ((alpha as usize) * (n - 1) / 2).max(1);
    let mut present: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut queue: std::collections::VecDeque<(Vertex, Vertex)> = Default::default();
    let max_edges = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(ops);

    while out.len() < ops {
        if queue.len() > window || present.len() == max_edges {
            let (u, v) = queue.pop_front().expect("window exceeded means edges exist");
            present.remove(&(u, v));
            out.push(TraceOp::Delete(u, v));
            continue;
        }
        let key = loop {
            let u = rng.gen_range(0..n as Vertex);
            let v = rng.gen_range(0..n as Vertex);
            let key = if u < v { (u, v) } else { (v, u) };
            if u != v && !present.contains(&key) {
                break key;
            }
        };
        present.insert(key);
        queue.push_back(key);
        out.push(TraceOp::Insert(key.0, key.1));
    }
    out
}

/// Hubs are `0..alpha`, spokes the rest; a cycle inserts every (hub, spoke)
/// pair in order and then deletes them in the same order. The seed does not
/// influence this workload.
fn star_churn(n: usize, alpha: u32, ops: usize) -> Result<Vec<TraceOp>, GenError> {
    if alpha as usize >= n {
        return Err(GenError(format!("star-churn with alpha = {alpha} leaves no spokes for n = {n}")));
    }
    let pairs: Vec<(Vertex, Vertex)> = (alpha..n as Vertex)
        .flat_map(|spoke| (0..alpha).map(move |hub| (hub, spoke)))
        .collect();
    let mut out = Vec::with_capacity(ops);
    'outer: loop {
        for &(h, s) in &pairs {
            if out.len() == ops {
                break 'outer;
            }
            out.push(TraceOp::Insert(h, s));
        }
        for &(h, s) in &pairs {
            if out.len() == ops {
                break 'outer;
            }
            out.push(TraceOp::Delete(h, s));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn replayable(trace: &Trace) {
        let mut present = HashSet::new();
        for op in &trace.ops {
            match *op {
                TraceOp::Insert(u, v) => {
                    assert!(u != v && (u as usize) < trace.n && (v as usize) < trace.n);
                    assert!(present.insert(if u < v { (u, v) } else { (v, u) }), "+ {u} {v} twice");
                }
                TraceOp::Delete(u, v) => {
                    assert!(present.remove(&if u < v { (u, v) } else { (v, u) }), "- {u} {v} absent");
                }
                _ => panic!("generators emit mutations only"),
            }
        }
    }

    #[test]
    fn generators_emit_legal_traces() {
        for kind in [Workload::ForestUnion, Workload::SlidingWindow, Workload::StarChurn] {
            let trace = generate(kind, 16, 2, 500, 7).unwrap();
            assert_eq!(trace.ops.len(), 500);
            replayable(&trace);
        }
    }

    #[test]
    fn star_churn_cycles_through_the_star() {
        let trace = generate(Workload::StarChurn, 9, 1, 16, 0).unwrap();
        let expected: Vec<TraceOp> = (1..9)
            .map(|s| TraceOp::Insert(0, s))
            .chain((1..9).map(|s| TraceOp::Delete(0, s)))
            .collect();
        assert_eq!(trace.ops, expected);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate(Workload::ForestUnion, 1, 1, 10, 0).is_err());
        assert!(generate(Workload::ForestUnion, 8, 0, 10, 0).is_err());
        assert!(generate(Workload::ForestUnion, 8, 1, 0, 0).is_err());
        assert!(generate(Workload::StarChurn, 4, 4, 10, 0).is_err());
        assert!("bogus".parse::<Workload>().is_err());
    }
}
