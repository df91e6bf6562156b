//! Brute-force oracles and random instance generators shared by the
//! integration suites. Everything here is deliberately independent of the
//! library's search kernels: plain enumeration, no matching, no pruning,
//! no canonical forms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::prelude::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use bergelab_core::embed::BlowupSpec;
use bergelab_core::{Graph, Hypergraph};

/// Berge containment by full enumeration: every vertex injection, then
/// every assignment of graph edges to distinct hyperedges that contain
/// the endpoint images.
pub fn berge_brute_force(h: &Hypergraph, g: &Graph) -> bool {
    let gn = g.n();
    let hn = h.n();
    if gn > hn {
        return false;
    }
    let g_edges = g.edges();

    fn injections(
        depth: usize,
        target: usize,
        hn: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == target {
            return out(map);
        }
        for x in 0..hn {
            if !used[x] {
                used[x] = true;
                map.push(x);
                if injections(depth + 1, target, hn, map, used, out) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }

    fn assign_edges(
        idx: usize,
        h: &Hypergraph,
        g_edges: &[(usize, usize)],
        map: &[usize],
        taken: &mut Vec<bool>,
    ) -> bool {
        if idx == g_edges.len() {
            return true;
        }
        let (u, v) = g_edges[idx];
        for (hidx, he) in h.edges().iter().enumerate() {
            if !taken[hidx] && he.contains_pair(map[u], map[v]) {
                taken[hidx] = true;
                if assign_edges(idx + 1, h, g_edges, map, taken) {
                    return true;
                }
                taken[hidx] = false;
            }
        }
        false
    }

    let mut map = Vec::with_capacity(gn);
    let mut used = vec![false; hn];
    injections(0, gn, hn, &mut map, &mut used, &mut |map: &[usize]| {
        let mut taken = vec![false; h.edge_count()];
        assign_edges(0, h, &g_edges, map, &mut taken)
    })
}

/// Shadow size by direct pair counting.
pub fn shadow_count_direct(n: usize, edges: &[Vec<usize>]) -> usize {
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in edges {
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
    }
    let _ = n;
    pairs.len()
}

/// All size-`k` subsets of `0..n`.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut comb: Vec<usize> = (0..k).collect();
    loop {
        out.push(comb.clone());
        let mut i = k as isize - 1;
        while i >= 0 && comb[i as usize] == n - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        comb[i] += 1;
        for j in i + 1..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
}

/// The unpruned exhaustive cover-Turán oracle: every subfamily of the
/// full edge universe, freeness by [`berge_brute_force`], no isomorphism
/// rejection, no minimality restriction.
///
/// Returns `None` when even the empty family contains a Berge copy
/// (edgeless patterns that fit), mirroring the undefined maximum.
pub fn naive_cover_turan(n: usize, r: &[usize], g: &Graph) -> Option<usize> {
    let mut universe: Vec<Vec<usize>> = Vec::new();
    for &k in r {
        universe.extend(k_subsets(n, k));
    }
    assert!(universe.len() <= 20, "oracle universe too large");
    let mut best: Option<usize> = None;
    for mask in 0u64..(1 << universe.len()) {
        let edges: Vec<Vec<usize>> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        let family = Hypergraph::new(n, r.iter().copied(), edges.clone()).unwrap();
        if !berge_brute_force(&family, g) {
            let count = shadow_count_direct(n, &edges);
            best = Some(best.map_or(count, |b: usize| b.max(count)));
        }
    }
    best
}

/// Chromatic number by plain backtracking over all colors, smallest k
/// that admits a proper coloring.
pub fn chromatic_brute_force(g: &Graph) -> usize {
    fn colorable(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).all(|u| colors[u] != c) {
                colors[v] = c;
                if colorable(g, k, v + 1, colors) {
                    return true;
                }
            }
        }
        colors[v] = usize::MAX;
        false
    }
    if g.n() == 0 {
        return 0;
    }
    let mut k = 1;
    loop {
        let mut colors = vec![usize::MAX; g.n()];
        if colorable(g, k, 0, &mut colors) {
            return k;
        }
        k += 1;
    }
}

/// The matching-plus-independent partition test over all 2^n partitions.
pub fn cond2_exhaustive(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 20);
    'masks: for mask in 0u64..(1 << n) {
        // bit set = independent side
        let mut p1_deg = vec![0usize; n];
        for (u, v) in g.edges() {
            let iu = mask >> u & 1 == 1;
            let iv = mask >> v & 1 == 1;
            if iu && iv {
                continue 'masks;
            }
            if !iu && !iv {
                p1_deg[u] += 1;
                p1_deg[v] += 1;
                if p1_deg[u] > 1 || p1_deg[v] > 1 {
                    continue 'masks;
                }
            }
        }
        return true;
    }
    false
}

/// Blowup containment by enumerating every map from pattern vertices to
/// base vertices and checking the constraints directly.
pub fn blowup_brute_force(g: &Graph, spec: &BlowupSpec) -> bool {
    let base_n = spec.base.n();
    let gn = g.n();
    if gn == 0 {
        return true;
    }
    assert!(base_n.pow(gn as u32) <= 200_000_000, "oracle map space too large");
    let mut phi = vec![0usize; gn];
    loop {
        if bergelab_core::embed::verify_blowup_assignment(g, spec, &phi) {
            return true;
        }
        let mut i = 0;
        loop {
            phi[i] += 1;
            if phi[i] < base_n {
                break;
            }
            phi[i] = 0;
            i += 1;
            if i == gn {
                return false;
            }
        }
    }
}

/// Random graph with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random k-uniform hypergraph with exactly `m` distinct edges.
pub fn random_uniform_hypergraph(rng: &mut ChaCha8Rng, n: usize, k: usize, m: usize) -> Hypergraph {
    let universe = k_subsets(n, k);
    assert!(m <= universe.len());
    let mut picked: BTreeSet<usize> = BTreeSet::new();
    while picked.len() < m {
        picked.insert(rng.random_range(0..universe.len()));
    }
    let edges: Vec<Vec<usize>> = picked.into_iter().map(|i| universe[i].clone()).collect();
    Hypergraph::uniform(n, k, edges).unwrap()
}

/// Random bipartite graph with no 4-cycle, built by incremental insertion
/// with rejection. Parts have sizes `a` and `b`.
pub fn random_c4_free_bipartite(rng: &mut ChaCha8Rng, a: usize, b: usize, attempts: usize) -> (Graph, Vec<usize>) {
    let mut g = Graph::empty(a + b);
    for _ in 0..attempts {
        let u = rng.random_range(0..a);
        let v = a + rng.random_range(0..b);
        if g.has_edge(u, v) {
            continue;
        }
        // adding uv creates a C4 iff some other u' shares a neighbor with u
        let creates_c4 = (0..a).any(|u2| {
            u2 != u && g.has_edge(u2, v) && g.neighbors(u).any(|w| g.has_edge(u2, w))
        });
        if !creates_c4 {
            g.add_edge(u, v);
        }
    }
    (g, (0..a).collect())
}

/// Random member of the dominating-vertex bipartite class: both parts
/// carry a vertex adjacent to the whole other part, minimum degree ≥ 2.
pub fn random_dominated_bipartite(rng: &mut ChaCha8Rng, a: usize, b: usize, p: f64) -> Graph {
    assert!(a >= 2 && b >= 2);
    let mut g = Graph::empty(a + b);
    for v in a..a + b {
        g.add_edge(0, v); // dominating vertex of part A
    }
    for u in 0..a {
        g.add_edge(u, a); // dominating vertex of part B
    }
    for u in 1..a {
        for v in a + 1..a + b {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    // top up degree-1 vertices so the whole graph has minimum degree 2
    for u in 1..a {
        if g.degree(u) < 2 {
            g.add_edge(u, a + 1 + rng.random_range(0..b - 1));
        }
    }
    for v in a + 1..a + b {
        if g.degree(v) < 2 {
            g.add_edge(1 + rng.random_range(0..a - 1), v);
        }
    }
    g
}

/// Uniform random pick from a slice.
pub fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty slice")
}
