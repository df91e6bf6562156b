//! Hypergraphs with a declared set of allowed edge cardinalities, their
//! 2-shadows, co-degrees, and edge-minimal reduction.

use std::collections::{BTreeMap, BTreeSet};

use crate::bits::BitSet;
use crate::graph::Graph;
use crate::Error;

/// One hyperedge: sorted vertex list plus a membership bit set.
#[derive(Clone, PartialEq, Eq)]
pub struct Hyperedge {
    verts: Vec<usize>,
    mask: BitSet,
}

impl Hyperedge {
    fn new(mut verts: Vec<usize>, n: usize) -> Self {
        verts.sort_unstable();
        verts.dedup();
        let mut mask = BitSet::new(n);
        for &v in &verts {
            mask.insert(v);
        }
        Hyperedge { verts, mask }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.mask.contains(v)
    }

    #[inline]
    pub fn contains_pair(&self, u: usize, v: usize) -> bool {
        self.mask.contains(u) && self.mask.contains(v)
    }

    pub fn contains_set(&self, s: &BitSet) -> bool {
        s.is_subset(&self.mask)
    }

    /// Unordered vertex pairs inside this edge, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.verts
            .iter()
            .enumerate()
            .flat_map(move |(i, &u)| self.verts[i + 1..].iter().map(move |&v| (u, v)))
    }
}

impl std::fmt::Debug for Hyperedge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.verts)
    }
}

/// A hypergraph whose edge cardinalities all lie in the declared set `R`.
///
/// Edges are distinct vertex sets of size ≥ 2, stored sorted
/// lexicographically so that edge indices are reproducible across runs and
/// match the serialized form.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    r: BTreeSet<usize>,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    /// Validating constructor. Repeated edges are silently deduplicated;
    /// the I/O layer is the place that rejects them.
    pub fn new(
        n: usize,
        r: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self, Error> {
        let r: BTreeSet<usize> = r.into_iter().collect();
        if r.iter().any(|&c| c < 2) {
            return Err(Error::Validation(
                "edge cardinalities below 2 are not allowed in R".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for edge in edges {
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::Validation(format!(
                    "hyperedge {edge:?} has vertex {v} out of range for n={n}"
                )));
            }
            let e = Hyperedge::new(edge, n);
            if !r.contains(&e.len()) {
                return Err(Error::Validation(format!(
                    "hyperedge {:?} has cardinality {} outside R={:?}",
                    e.vertices(),
                    e.len(),
                    r
                )));
            }
            if seen.insert(e.verts.clone()) {
                out.push(e);
            }
        }
        out.sort_by(|a, b| a.verts.cmp(&b.verts));
        Ok(Hypergraph { n, r, edges: out })
    }

    /// Uniform hypergraph: `R = {k}` inferred from the edges, all of which
    /// must have size `k`.
    pub fn uniform(n: usize, k: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self, Error> {
        Hypergraph::new(n, [k], edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &BTreeSet<usize> {
        &self.r
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of hyperedges containing every vertex of `s`.
    pub fn codegree(&self, s: &[usize]) -> usize {
        let set: BitSet = {
            let mut b = BitSet::new(self.n.max(s.iter().max().map_or(0, |m| m + 1)));
            for &v in s {
                b.insert(v);
            }
            b
        };
        self.edges.iter().filter(|e| e.contains_set(&set)).count()
    }

    /// Minimum co-degree over all `s`-element vertex sets, `δ_s`.
    /// Returns 0 for `n < s`.
    pub fn min_s_degree(&self, s: usize) -> usize {
        if s > self.n {
            return 0;
        }
        let mut min = usize::MAX;
        let mut subset: Vec<usize> = (0..s).collect();
        loop {
            min = min.min(self.codegree(&subset));
            if min == 0 {
                return 0;
            }
            // advance to the next s-combination of 0..n
            let mut i = s as isize - 1;
            while i >= 0 && subset[i as usize] == self.n - s + i as usize {
                i -= 1;
            }
            if i < 0 {
                return min;
            }
            let i = i as usize;
            subset[i] += 1;
            for j in i + 1..s {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    /// The 2-shadow: one graph edge per vertex pair covered by at least one
    /// hyperedge, with the covering hyperedge indices per pair.
    pub fn shadow(&self) -> ShadowGraph {
        let mut covers: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (idx, e) in self.edges.iter().enumerate() {
            for pair in e.pairs() {
                covers.entry(pair).or_default().push(idx);
            }
        }
        let mut graph = Graph::empty(self.n);
        for &(u, v) in covers.keys() {
            graph.add_edge(u, v);
        }
        ShadowGraph { graph, covers }
    }

    /// True when every vertex pair is covered, i.e. `δ₂ ≥ 1`.
    pub fn is_covering(&self) -> bool {
        let by_codegree = self.min_s_degree(2) >= 1;
        debug_assert_eq!(
            by_codegree,
            self.shadow().graph().edge_count() == self.n * self.n.saturating_sub(1) / 2,
            "covering must agree with shadow completeness"
        );
        by_codegree
    }

    /// Shadow pairs covered by exactly one hyperedge, lexicographically.
    pub fn uniquely_embedded_pairs(&self) -> Vec<(usize, usize)> {
        self.shadow()
            .covers
            .iter()
            .filter(|(_, ids)| ids.len() == 1)
            .map(|(&pair, _)| pair)
            .collect()
    }

    /// Subhypergraph with the hyperedges at `keep` (indices into
    /// [`Hypergraph::edges`]), on the same vertex set.
    pub fn restrict(&self, keep: &[usize]) -> Hypergraph {
        let edges = keep.iter().map(|&i| self.edges[i].clone()).collect();
        Hypergraph {
            n: self.n,
            r: self.r.clone(),
            edges,
        }
    }

    /// Removes hyperedges until every remaining edge owns a pair covered by
    /// no other edge, without changing the shadow.
    ///
    /// Edges are scanned in descending index order and dropped exactly when
    /// every pair they cover has co-degree ≥ 2 at that moment, so the result
    /// is deterministic. The output has at most `C(n,2)` hyperedges.
    pub fn reduce_edge_minimal(&self) -> Hypergraph {
        let mut codeg: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &self.edges {
            for p in e.pairs() {
                *codeg.entry(p).or_insert(0) += 1;
            }
        }
        let mut kept = vec![true; self.edges.len()];
        for idx in (0..self.edges.len()).rev() {
            let removable = self.edges[idx].pairs().all(|p| codeg[&p] >= 2);
            if removable {
                kept[idx] = false;
                for p in self.edges[idx].pairs() {
                    *codeg.get_mut(&p).unwrap() -= 1;
                }
            }
        }
        let keep: Vec<usize> = (0..self.edges.len()).filter(|&i| kept[i]).collect();
        self.restrict(&keep)
    }
}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hypergraph(n={}, R={:?}, edges={:?})", self.n, self.r, self.edges)
    }
}

/// The 2-shadow of a hypergraph together with, per shadow edge, the sorted
/// list of indices of the hyperedges covering it.
#[derive(Clone, Debug)]
pub struct ShadowGraph {
    graph: Graph,
    covers: BTreeMap<(usize, usize), Vec<usize>>,
}

impl ShadowGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.covers.len()
    }

    /// Hyperedge indices covering pair `uv`; empty if `uv` is not a shadow edge.
    pub fn covering(&self, u: usize, v: usize) -> &[usize] {
        let key = (u.min(v), u.max(v));
        self.covers.get(&key).map_or(&[], |v| v.as_slice())
    }

    pub fn covers(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.covers
    }
}
