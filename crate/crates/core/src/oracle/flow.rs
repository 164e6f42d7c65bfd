//! Exact minimum achievable maximum out-degree, via feasibility flows.
//!
//! An orientation with max out-degree `d` exists iff the bipartite network
//! (source -> one unit per edge -> either endpoint -> sink with capacity `d`)
//! admits a flow saturating every edge unit. Binary search over `d` with a
//! BFS augmenting-path max-flow keeps this exact and small.

use super::StaticGraph;

struct FlowNet {
    // to, capacity, index of the reverse arc in `graph[to]`.
    graph: Vec<Vec<(u32, u32, u32)>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            graph: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        let back = self.graph[to].len() as u32;
        let fwd = self.graph[from].len() as u32;
        self.graph[from].push((to as u32, cap, back));
        self.graph[to].push((from as u32, 0, fwd));
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> u32 {
        let mut total = 0;
        loop {
            // parent[v] = (node, arc index) on the BFS tree.
            let mut parent = vec![None; self.graph.len()];
            let mut queue = std::collections::VecDeque::from([source]);
            parent[source] = Some((source, usize::MAX));
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for (i, &(to, cap, _)) in self.graph[u].iter().enumerate() {
                    if cap > 0 && parent[to as usize].is_none() {
                        parent[to as usize] = Some((u, i));
                        queue.push_back(to as usize);
                    }
                }
            }
            if parent[sink].is_none() {
                return total;
            }
            let mut bottleneck = u32::MAX;
            let mut v = sink;
            while v != source {
                let (u, i) = parent[v].unwrap();
                bottleneck = bottleneck.min(self.graph[u][i].1);
                v = u;
            }
            let mut v = sink;
            while v != source {
                let (u, i) = parent[v].unwrap();
                self.graph[u][i].1 -= bottleneck;
                let (to, _, rev) = self.graph[u][i];
                self.graph[to as usize][rev as usize].1 += bottleneck;
                v = u;
            }
            total += bottleneck;
        }
    }
}

fn orientable_with_degree(g: &StaticGraph, d: u32) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    // 0 = source, 1..=m edge units, m+1..=m+n vertices, m+n+1 = sink.
    let mut net = FlowNet::new(m + n + 2);
    let sink = m + n + 1;
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_edge(0, 1 + i, 1);
        net.add_edge(1 + i, m + 1 + u as usize, 1);
        net.add_edge(1 + i, m + 1 + v as usize, 1);
    }
    for v in 0..n {
        net.add_edge(m + 1 + v, sink, d);
    }
    net.max_flow(0, sink) == m as u32
}

/// The smallest max out-degree any orientation of `g` can achieve.
pub fn min_max_outdegree(g: &StaticGraph) -> u32 {
    if g.edge_count() == 0 {
        return 0;
    }
    let mut lo = 1u32;
    let mut hi = g.edge_count() as u32;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if orientable_with_degree(g, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vertex;

    fn complete(n: usize) -> StaticGraph {
        let mut edges = Vec::new();
        for u in 0..n as Vertex {
            for v in (u + 1)..n as Vertex {
                edges.push((u, v));
            }
        }
        StaticGraph::new(n, edges)
    }

    #[test]
    fn optimal_degrees_of_small_standards() {
        assert_eq!(min_max_outdegree(&complete(4)), 2);
        assert_eq!(
            min_max_outdegree(&StaticGraph::new(2, vec![(0, 1)])),
            1
        );
        let cycle = StaticGraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(min_max_outdegree(&cycle), 1);
        assert_eq!(min_max_outdegree(&StaticGraph::new(3, Vec::new())), 0);
    }

    #[test]
    fn sandwiched_by_arboricity() {
        // alpha - 1 <= optimum <= alpha on a few handmade graphs.
        for g in [complete(4), complete(5), complete(6)] {
            let alpha = super::super::arboricity_exact(&g, 16).unwrap();
            let opt = min_max_outdegree(&g);
            assert!(opt + 1 >= alpha && opt <= alpha, "alpha {alpha}, opt {opt}");
        }
    }
}
