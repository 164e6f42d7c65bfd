//! Plain-vector replays of both maintenance strategies. Everything is scans
//! over `Vec`s, quadratic and obviously correct, including the tie-break the
//! real heap's report produces: bucket entries surface most-recently-touched
//! first, so the replica keeps its in-neighbor records in last-touch order
//! and picks the first among the maximum keys.

use crate::Vertex;

/// Flip accounting for one replayed update, mirroring `UpdateStats`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub flips: u32,
    pub recursion_depth: u32,
}

/// In-neighbor records of one vertex, most recently touched first. `touch`
/// order mirrors the real heap, where insert, increment, and decrement all
/// relink an element at its bucket's front.
#[derive(Clone, Debug, Default)]
struct RecencyEntries {
    entries: Vec<(Vertex, u32)>,
}

impl RecencyEntries {
    fn position(&self, id: Vertex) -> usize {
        self.entries
            .iter()
            .position(|&(e, _)| e == id)
            .expect("replica heap entry exists")
    }

    fn insert(&mut self, id: Vertex, key: u32) {
        debug_assert!(!self.entries.iter().any(|&(e, _)| e == id));
        self.entries.insert(0, (id, key));
    }

    fn delete(&mut self, id: Vertex) {
        let p = self.position(id);
        self.entries.remove(p);
    }

    fn shift(&mut self, id: Vertex, delta: i64) {
        let p = self.position(id);
        let (_, key) = self.entries.remove(p);
        let key = (key as i64 + delta) as u32;
        self.entries.insert(0, (id, key));
    }

    /// Restricted max-report: the most recently touched entry among the
    /// maximum keys, provided that maximum clears `center + 2`.
    fn report(&self, center: u32) -> Option<Vertex> {
        let max = self.entries.iter().map(|&(_, k)| k).max()?;
        if max < center + 2 {
            return None;
        }
        self.entries.iter().find(|&&(_, k)| k == max).map(|&(id, _)| id)
    }
}

/// Replayed orientation structure. `window` is `None` for the baseline
/// strategy (full-list scans, new edges appended) and `Some(gamma)` for the
/// windowed one (block-window scans, positional replacement, rotation).
#[derive(Clone, Debug)]
pub struct Replica {
    window: Option<u32>,
    out: Vec<Vec<Vertex>>,
    heaps: Vec<RecencyEntries>,
}

/// Baseline-strategy replay.
#[derive(Clone, Debug)]
pub struct NaiveReplica(pub Replica);

/// Windowed-strategy replay.
#[derive(Clone, Debug)]
pub struct SpectrumReplica(pub Replica);

impl NaiveReplica {
    pub fn new(n: usize) -> Self {
        NaiveReplica(Replica::new(n, None))
    }
}

impl SpectrumReplica {
    pub fn new(n: usize, gamma: u32) -> Self {
        assert!(gamma >= 2, "block width below 2");
        SpectrumReplica(Replica::new(n, Some(gamma)))
    }
}

impl std::ops::Deref for NaiveReplica {
    type Target = Replica;
    fn deref(&self) -> &Replica {
        &self.0
    }
}

impl std::ops::DerefMut for NaiveReplica {
    fn deref_mut(&mut self) -> &mut Replica {
        &mut self.0
    }
}

impl std::ops::Deref for SpectrumReplica {
    type Target = Replica;
    fn deref(&self) -> &Replica {
        &self.0
    }
}

impl std::ops::DerefMut for SpectrumReplica {
    fn deref_mut(&mut self) -> &mut Replica {
        &mut self.0
    }
}

impl Replica {
    pub fn new(n: usize, window: Option<u32>) -> Self {
        Replica {
            window,
            out: vec![Vec::new(); n],
            heaps: (0..n).map(|_| RecencyEntries::default()).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn out_degree(&self, u: Vertex) -> u32 {
        self.out[u as usize].len() as u32
    }

    pub fn max_out_degree(&self) -> u32 {
        self.out.iter().map(|l| l.len() as u32).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Out-neighbors of `u` in exact list order.
    pub fn out_list(&self, u: Vertex) -> &[Vertex] {
        &self.out[u as usize]
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u as usize].contains(&v) || self.out[v as usize].contains(&u)
    }

    pub fn orientation_of(&self, u: Vertex, v: Vertex) -> Option<(Vertex, Vertex)> {
        if self.out[u as usize].contains(&v) {
            Some((u, v))
        } else if self.out[v as usize].contains(&u) {
            Some((v, u))
        } else {
            None
        }
    }

    fn deg(&self, u: Vertex) -> u32 {
        self.out[u as usize].len() as u32
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> ReplayOutcome {
        assert!(u != v && !self.contains_edge(u, v), "replica insert precondition");
        let (mut tail, mut head) = crate::graph::choose_tail(self.deg(u), self.deg(v), u, v);
        let mut flips = 0;
        let mut depth = 0;
        loop {
            depth += 1;
            let key = self.deg(tail);
            self.heaps[head as usize].insert(tail, key);
            self.out[tail as usize].push(head);

            let list = &self.out[tail as usize];
            let dt = list.len() as u32;
            let victim = match self.window {
                None => list.iter().position(|&w| dt > self.deg(w) + 1),
                Some(gamma) => {
                    let len = list.len();
                    let window = ((gamma - 1) as usize).min(len - 1);
                    (1..=window)
                        .map(|k| len - 1 - k)
                        .find(|&i| dt > self.deg(list[i]) + 1)
                }
            };

            if let Some(p) = victim {
                let w = self.out[tail as usize][p];
                self.heaps[w as usize].delete(tail);
                match self.window {
                    None => {
                        self.out[tail as usize].remove(p);
                    }
                    Some(_) => {
                        let fresh = self.out[tail as usize].pop().expect("list holds the new edge");
                        debug_assert_eq!(fresh, head);
                        self.out[tail as usize][p] = fresh;
                    }
                }
                flips += 1;
                head = tail;
                tail = w;
                continue;
            }

            for i in 0..self.out[tail as usize].len() {
                let w = self.out[tail as usize][i];
                self.heaps[w as usize].shift(tail, 1);
            }
            if let Some(gamma) = self.window {
                let len = self.out[tail as usize].len();
                let window = ((gamma - 1) as usize).min(len - 1);
                let list = &mut self.out[tail as usize];
                let mut rotated = Vec::with_capacity(len);
                rotated.push(list[len - 1]);
                rotated.extend_from_slice(&list[len - 1 - window..len - 1]);
                rotated.extend_from_slice(&list[..len - 1 - window]);
                *list = rotated;
            }
            return ReplayOutcome { flips, recursion_depth: depth };
        }
    }

    pub fn delete(&mut self, u: Vertex, v: Vertex) -> ReplayOutcome {
        let (mut tail, mut head) = self
            .orientation_of(u, v)
            .expect("replica delete precondition");
        let mut flips = 0;
        let mut depth = 0;
        loop {
            depth += 1;
            let p = self.out[tail as usize]
                .iter()
                .position(|&w| w == head)
                .expect("edge present along the chain");
            self.out[tail as usize].remove(p);
            self.heaps[head as usize].delete(tail);

            let candidate = self.heaps[tail as usize].report(self.deg(tail));
            if let Some(vp) = candidate {
                let key = self.deg(tail) + 1;
                self.heaps[vp as usize].insert(tail, key);
                match self.window {
                    None => self.out[tail as usize].push(vp),
                    Some(_) => self.out[tail as usize].insert(p, vp),
                }
                flips += 1;
                head = tail;
                tail = vp;
                continue;
            }

            for i in 0..self.out[tail as usize].len() {
                let w = self.out[tail as usize][i];
                self.heaps[w as usize].shift(tail, -1);
            }
            return ReplayOutcome { flips, recursion_depth: depth };
        }
    }
}
