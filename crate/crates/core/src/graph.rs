//! Simple undirected graphs on labeled vertices `0…n−1`.

use crate::bits::BitSet;
use crate::Error;

/// Simple undirected graph. No self-loops, no multi-edges.
///
/// Adjacency is one bit row per vertex so the containment solvers can test
/// edges and neighborhood intersections in O(n/64).
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| BitSet::new(n)).collect(),
        }
    }

    /// Validating constructor. Rejects self-loops and out-of-range
    /// endpoints; a repeated pair is simply absorbed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Inserts the edge `uv`. Panics on a self-loop or out-of-range vertex;
    /// use [`Graph::from_edges`] for untrusted input.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid edge ({u},{v})");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// The induced subgraph on all vertices except `v`, relabeled densely
    /// (vertices above `v` shift down by one).
    pub fn delete_vertex(&self, v: usize) -> Graph {
        let mut g = Graph::empty(self.n - 1);
        let map = |x: usize| if x > v { x - 1 } else { x };
        for (a, b) in self.edges() {
            if a != v && b != v {
                g.add_edge(map(a), map(b));
            }
        }
        g
    }

    /// Bipartition via BFS on every component, or `None` if an odd cycle
    /// exists. Side 0 always contains the smallest vertex of each component.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut side = vec![usize::MAX; self.n];
        for start in 0..self.n {
            if side[start] != usize::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if side[v] == usize::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        let part = |s| (0..self.n).filter(|&v| side[v] == s).collect();
        Some((part(0), part(1)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = BitSet::new(self.n);
        seen.insert(0);
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen.contains(v) {
                    seen.insert(v);
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Some triangle `[a, b, c]` with `a < b < c`, or `None`.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for (u, v) in self.edges() {
            for w in self.adj[u].iter() {
                if w > v && self.adj[v].contains(w) {
                    return Some([u, v, w]);
                }
            }
        }
        None
    }

    // Named graphs used throughout the test fixtures and the catalog.

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle `0−1−…−(n−1)−0`; requires `n ≥ 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    /// Path on `n` vertices (`n−1` edges).
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Complete bipartite graph with parts `{0…a−1}` and `{a…a+b−1}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The Petersen graph: outer 5-cycle `0…4`, inner 5-cycle `5…9` stepped
    /// by two, spokes `v` to `v+5`.
    pub fn petersen() -> Graph {
        let mut g = Graph::empty(10);
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5);
            g.add_edge(5 + v, 5 + (v + 2) % 5);
            g.add_edge(v, v + 5);
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
