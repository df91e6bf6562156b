//! Containment deciders: Berge copies of a graph inside a hypergraph,
//! plain subgraph containment, and containment in generalized blowups.

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::{Budget, BudgetClock};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::Error;

/// Certificate that a hypergraph contains a Berge copy of a graph:
/// an injective vertex map and an injective assignment of graph edges to
/// distinct hyperedges, each containing the images of its endpoints.
///
/// Graph edges are indexed by their position in [`Graph::edges`]
/// (lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergeEmbedding {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Result of a budgeted Berge search. `Absent` is a proof of absence;
/// `Unknown` only reports budget exhaustion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BergeOutcome {
    Found(BergeEmbedding),
    Absent,
    Unknown,
}

impl BergeOutcome {
    pub fn found(&self) -> bool {
        matches!(self, BergeOutcome::Found(_))
    }

    pub fn embedding(&self) -> Option<&BergeEmbedding> {
        match self {
            BergeOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

/// True iff `emb` is a valid Berge-`g` certificate against `h`.
pub fn verify_embedding(h: &Hypergraph, g: &Graph, emb: &BergeEmbedding) -> bool {
    let g_edges = g.edges();
    if emb.vertex_map.len() != g.n() || emb.edge_map.len() != g_edges.len() {
        return false;
    }
    if emb.vertex_map.iter().any(|&x| x >= h.n()) {
        return false;
    }
    if emb.vertex_map.iter().collect::<BTreeSet<_>>().len() != emb.vertex_map.len() {
        return false;
    }
    if emb.edge_map.iter().any(|&idx| idx >= h.edge_count()) {
        return false;
    }
    if emb.edge_map.iter().collect::<BTreeSet<_>>().len() != emb.edge_map.len() {
        return false;
    }
    g_edges.iter().zip(&emb.edge_map).all(|(&(u, v), &hidx)| {
        h.edges()[hidx].contains_pair(emb.vertex_map[u], emb.vertex_map[v])
    })
}

/// Decides whether `h` contains a Berge copy of `g`.
///
/// Backtracks over the vertex injection in descending `g`-degree order
/// (ties by index). Every placement is validated by maintaining a maximum
/// bipartite matching between the graph edges with both endpoints placed
/// and the hyperedges that contain both images; a placement dies as soon
/// as that matching stops being perfect on the forced edges.
pub fn contains_berge(h: &Hypergraph, g: &Graph, budget: &Budget) -> BergeOutcome {
    let mut search = BergeSearch::new(h, g, budget);
    search.run(&[], None)
}

/// Like [`contains_berge`] but only admits embeddings whose edge map uses
/// the hyperedge at `target`. Callers that grow a family one hyperedge at
/// a time use this to re-check freeness incrementally.
pub(crate) fn contains_berge_via(
    h: &Hypergraph,
    g: &Graph,
    target: usize,
    budget: &Budget,
) -> BergeOutcome {
    let g_edges = g.edges();
    if g_edges.is_empty() {
        // no edge can use the target; an edgeless pattern never qualifies
        return BergeOutcome::Absent;
    }
    let tverts: Vec<usize> = h.edges()[target].vertices().to_vec();
    let mut search = BergeSearch::new(h, g, budget);
    let mut exhausted = false;
    for (eidx, &(gu, gv)) in g_edges.iter().enumerate() {
        for (i, &x) in tverts.iter().enumerate() {
            for &y in &tverts[i + 1..] {
                for (iu, iv) in [(x, y), (y, x)] {
                    search.reset();
                    let seed = [(gu, iu), (gv, iv)];
                    match search.run(&seed, Some((eidx, target))) {
                        BergeOutcome::Found(emb) => return BergeOutcome::Found(emb),
                        BergeOutcome::Unknown => exhausted = true,
                        BergeOutcome::Absent => {}
                    }
                }
            }
        }
    }
    if exhausted {
        BergeOutcome::Unknown
    } else {
        BergeOutcome::Absent
    }
}

struct BergeSearch<'a> {
    h: &'a Hypergraph,
    g: &'a Graph,
    g_edges: Vec<(usize, usize)>,
    edge_index: BTreeMap<(usize, usize), usize>,
    order: Vec<usize>,
    pair_cover: BTreeMap<(usize, usize), Vec<usize>>,
    h_edge_degree: Vec<usize>,
    h_shadow_degree: Vec<usize>,
    assignment: Vec<Option<usize>>,
    used: Vec<bool>,
    edge_to_h: Vec<Option<usize>>,
    h_to_edge: Vec<Option<usize>>,
    pinned_h: Option<usize>,
    visit_stamp: Vec<u32>,
    epoch: u32,
    clock: BudgetClock,
}

impl<'a> BergeSearch<'a> {
    fn new(h: &'a Hypergraph, g: &'a Graph, budget: &Budget) -> Self {
        let g_edges = g.edges();
        let edge_index = g_edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

        let shadow = h.shadow();
        let pair_cover = shadow.covers().clone();
        let mut h_edge_degree = vec![0usize; h.n()];
        for e in h.edges() {
            for &v in e.vertices() {
                h_edge_degree[v] += 1;
            }
        }
        let h_shadow_degree = (0..h.n()).map(|v| shadow.graph().degree(v)).collect();
        let edge_total = g_edges.len();

        BergeSearch {
            h,
            g,
            g_edges,
            edge_index,
            order,
            pair_cover,
            h_edge_degree,
            h_shadow_degree,
            assignment: vec![None; g.n()],
            used: vec![false; h.n()],
            edge_to_h: vec![None; edge_total],
            h_to_edge: vec![None; h.edge_count()],
            pinned_h: None,
            visit_stamp: vec![0; h.edge_count()],
            epoch: 0,
            clock: budget.start(),
        }
    }

    fn reset(&mut self) {
        self.assignment.fill(None);
        self.used.fill(false);
        self.edge_to_h.fill(None);
        self.h_to_edge.fill(None);
        self.pinned_h = None;
    }

    /// Runs the search from an optional seed assignment. `pin` fixes one
    /// graph edge to one hyperedge; neither side takes part in augmenting
    /// paths afterwards.
    fn run(&mut self, seed: &[(usize, usize)], pin: Option<(usize, usize)>) -> BergeOutcome {
        for &(gv, hv) in seed {
            if self.used[hv] || self.assignment[gv].is_some() {
                // colliding seed (e.g. a loop-like pin attempt): not embeddable
                return BergeOutcome::Absent;
            }
            if !self.candidate_ok(gv, hv) {
                return BergeOutcome::Absent;
            }
            self.assignment[gv] = Some(hv);
            self.used[hv] = true;
        }
        if let Some((eidx, hidx)) = pin {
            let (u, v) = self.g_edges[eidx];
            let (iu, iv) = (self.assignment[u], self.assignment[v]);
            let (iu, iv) = match (iu, iv) {
                (Some(a), Some(b)) => (a, b),
                _ => return BergeOutcome::Absent,
            };
            if !self.h.edges()[hidx].contains_pair(iu, iv) {
                return BergeOutcome::Absent;
            }
            self.edge_to_h[eidx] = Some(hidx);
            self.h_to_edge[hidx] = Some(eidx);
            self.pinned_h = Some(hidx);
        }
        // edges between seeded vertices (other than the pin) still need hosts
        for idx in 0..self.g_edges.len() {
            let (u, v) = self.g_edges[idx];
            if self.assignment[u].is_some()
                && self.assignment[v].is_some()
                && self.edge_to_h[idx].is_none()
                && !self.augment(idx)
            {
                return BergeOutcome::Absent;
            }
        }
        match self.search(0) {
            Ok(true) => {
                let vertex_map = self.assignment.iter().map(|a| a.unwrap()).collect();
                let edge_map = self.edge_to_h.iter().map(|a| a.unwrap()).collect();
                let emb = BergeEmbedding {
                    vertex_map,
                    edge_map,
                };
                debug_assert!(verify_embedding(self.h, self.g, &emb));
                BergeOutcome::Found(emb)
            }
            Ok(false) => BergeOutcome::Absent,
            Err(Exhausted) => BergeOutcome::Unknown,
        }
    }

    fn candidate_ok(&self, gv: usize, hv: usize) -> bool {
        let need = self.g.degree(gv);
        if self.h_edge_degree[hv] < need || self.h_shadow_degree[hv] < need {
            return false;
        }
        self.g.neighbors(gv).all(|u| match self.assignment[u] {
            Some(iu) => {
                let key = (iu.min(hv), iu.max(hv));
                self.pair_cover.contains_key(&key)
            }
            None => true,
        })
    }

    fn search(&mut self, depth: usize) -> Result<bool, Exhausted> {
        if !self.clock.tick() {
            return Err(Exhausted);
        }
        if depth == self.g.n() {
            return Ok(true);
        }
        let v = self.order[depth];
        if self.assignment[v].is_some() {
            return self.search(depth + 1);
        }
        for x in 0..self.h.n() {
            if self.used[x] || !self.candidate_ok(v, x) {
                continue;
            }
            let saved_edges = self.edge_to_h.clone();
            let saved_hyper = self.h_to_edge.clone();
            self.assignment[v] = Some(x);
            self.used[x] = true;

            let mut feasible = true;
            for u in self.g.neighbors(v) {
                if self.assignment[u].is_some() {
                    let key = order_pair(u, v);
                    let eidx = self.edge_index[&key];
                    if !self.augment(eidx) {
                        feasible = false;
                        break;
                    }
                }
            }
            if feasible && self.search(depth + 1)? {
                return Ok(true);
            }
            self.assignment[v] = None;
            self.used[x] = false;
            self.edge_to_h = saved_edges;
            self.h_to_edge = saved_hyper;
        }
        Ok(false)
    }

    /// Kuhn augmentation for one forced graph edge.
    fn augment(&mut self, eidx: usize) -> bool {
        self.epoch += 1;
        self.augment_dfs(eidx)
    }

    fn augment_dfs(&mut self, eidx: usize) -> bool {
        let (u, v) = self.g_edges[eidx];
        let (iu, iv) = (self.assignment[u].unwrap(), self.assignment[v].unwrap());
        let key = (iu.min(iv), iu.max(iv));
        let cands = match self.pair_cover.get(&key) {
            Some(c) => c.clone(),
            None => return false,
        };
        for &hidx in &cands {
            if self.visit_stamp[hidx] == self.epoch || Some(hidx) == self.pinned_h {
                continue;
            }
            self.visit_stamp[hidx] = self.epoch;
            let occupant = self.h_to_edge[hidx];
            let free = match occupant {
                None => true,
                Some(other) => self.augment_dfs(other),
            };
            if free {
                self.h_to_edge[hidx] = Some(eidx);
                self.edge_to_h[eidx] = Some(hidx);
                return true;
            }
        }
        false
    }
}

struct Exhausted;

fn order_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// A (not necessarily induced) embedding of `g` into `host`:
/// `map[v]` is the host vertex carrying `v`. Exact; no budget.
pub fn subgraph_contains(host: &Graph, g: &Graph) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut assignment = vec![None; g.n()];
    let mut used = vec![false; host.n()];

    fn place(
        depth: usize,
        order: &[usize],
        host: &Graph,
        g: &Graph,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        'cands: for x in 0..host.n() {
            if used[x] || host.degree(x) < g.degree(v) {
                continue;
            }
            for u in g.neighbors(v) {
                if let Some(iu) = assignment[u] {
                    if !host.has_edge(iu, x) {
                        continue 'cands;
                    }
                }
            }
            assignment[v] = Some(x);
            used[x] = true;
            if place(depth + 1, order, host, g, assignment, used) {
                return true;
            }
            assignment[v] = None;
            used[x] = false;
        }
        false
    }

    if place(0, &order, host, g, &mut assignment, &mut used) {
        Some(assignment.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// A base graph with fiber sizes and a set of base edges that carry
/// matching semantics instead of complete-bipartite semantics.
#[derive(Clone, Debug)]
pub struct BlowupSpec {
    pub base: Graph,
    pub sizes: Vec<usize>,
    pub matching_edges: BTreeSet<(usize, usize)>,
}

impl BlowupSpec {
    pub fn new(
        base: Graph,
        sizes: Vec<usize>,
        matching_edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        if sizes.len() != base.n() {
            return Err(Error::Validation(format!(
                "expected {} fiber sizes, got {}",
                base.n(),
                sizes.len()
            )));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Validation(format!("fiber {i} has size 0")));
        }
        let matching_edges: BTreeSet<(usize, usize)> = matching_edges
            .into_iter()
            .map(|(a, b)| order_pair(a, b))
            .collect();
        for &(a, b) in &matching_edges {
            if b >= base.n() || !base.has_edge(a, b) {
                return Err(Error::Validation(format!(
                    "matching edge ({a},{b}) is not a base edge"
                )));
            }
        }
        Ok(BlowupSpec {
            base,
            sizes,
            matching_edges,
        })
    }

    /// Uniform blowup with factor `s` and the given matching edges.
    pub fn uniform(
        base: Graph,
        s: usize,
        matching_edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        let n = base.n();
        BlowupSpec::new(base, vec![s; n], matching_edges)
    }

    fn is_matching_edge(&self, a: usize, b: usize) -> bool {
        self.matching_edges.contains(&order_pair(a, b))
    }
}

/// Re-verifies a fiber assignment against the blowup constraints by
/// direct inspection.
pub fn verify_blowup_assignment(g: &Graph, spec: &BlowupSpec, phi: &[usize]) -> bool {
    if phi.len() != g.n() || phi.iter().any(|&b| b >= spec.base.n()) {
        return false;
    }
    let mut load = vec![0usize; spec.base.n()];
    for &b in phi {
        load[b] += 1;
    }
    if load.iter().zip(&spec.sizes).any(|(&l, &s)| l > s) {
        return false;
    }
    for (u, v) in g.edges() {
        if phi[u] == phi[v] || !spec.base.has_edge(phi[u], phi[v]) {
            return false;
        }
    }
    for &(a, b) in &spec.matching_edges {
        for v in 0..g.n() {
            for (here, there) in [(a, b), (b, a)] {
                if phi[v] == here {
                    let cross = g.neighbors(v).filter(|&u| phi[u] == there).count();
                    if cross > 1 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Decides whether `g` fits in the blowup described by `spec`.
///
/// Returns `map[v] = base vertex of v's fiber` such that fiber loads stay
/// within the sizes, every `g`-edge crosses a base edge, and on each
/// matching base edge the crossing `g`-edges form a matching between the
/// two fibers. Exact: `None` means no such assignment exists.
pub fn contains_in_blowup(g: &Graph, spec: &BlowupSpec) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut fiber = vec![None; g.n()];
    let mut load = vec![0usize; spec.base.n()];

    fn feasible(g: &Graph, spec: &BlowupSpec, fiber: &[Option<usize>], v: usize, b: usize) -> bool {
        for u in g.neighbors(v) {
            let Some(a) = fiber[u] else { continue };
            if a == b || !spec.base.has_edge(a, b) {
                return false;
            }
            if spec.is_matching_edge(a, b) {
                // v may touch fiber a through at most one neighbor
                let v_touches = g
                    .neighbors(v)
                    .filter(|&w| fiber[w] == Some(a))
                    .count();
                if v_touches > 1 {
                    return false;
                }
                // and u must not already be matched into fiber b
                let u_touches = g
                    .neighbors(u)
                    .filter(|&w| fiber[w] == Some(b))
                    .count();
                if u_touches > 0 {
                    return false;
                }
            }
        }
        true
    }

    fn place(
        depth: usize,
        order: &[usize],
        g: &Graph,
        spec: &BlowupSpec,
        fiber: &mut Vec<Option<usize>>,
        load: &mut Vec<usize>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for b in 0..spec.base.n() {
            if load[b] == spec.sizes[b] || !feasible(g, spec, fiber, v, b) {
                continue;
            }
            fiber[v] = Some(b);
            load[b] += 1;
            if place(depth + 1, order, g, spec, fiber, load) {
                return true;
            }
            fiber[v] = None;
            load[b] -= 1;
        }
        false
    }

    if place(0, &order, g, spec, &mut fiber, &mut load) {
        Some(fiber.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}
