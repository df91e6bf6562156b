//! Generators for the witness hypergraphs and graphs: the two matched-pair
//! families H₁/H₂, the Turán transversal hypergraph, (generalized) blowups,
//! the bipartite split construction, and uniform shrinking.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embed::BlowupSpec;
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::Error;

/// A generated hypergraph together with the map from construction roles
/// (`a1`, `b3`, `p0v2`, …) to concrete vertex ids.
#[derive(Clone, Debug)]
pub struct LabeledConstruction {
    pub hypergraph: Hypergraph,
    pub labels: BTreeMap<String, usize>,
}

/// The 3-uniform family on parts `A`, `B` of size n/2 whose edges are
/// `{a_i, b_j, b_{j+1}}` for odd `j`. Vertices: `a_i ↦ i−1`,
/// `b_j ↦ n/2 + j − 1`.
///
/// Requires `n ≡ 0 (mod 4)` so the odd-indexed pairs tile `B` exactly.
pub fn construct_h1(n: usize) -> Result<LabeledConstruction, Error> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "h1 requires n divisible by 4, got {n}"
        )));
    }
    let half = n / 2;
    let a = |i: usize| i - 1; // a_i, 1-based
    let b = |j: usize| half + j - 1; // b_j, 1-based
    let mut edges = Vec::new();
    for i in 1..=half {
        for j in (1..half).step_by(2) {
            edges.push(vec![a(i), b(j), b(j + 1)]);
        }
    }
    let hypergraph = Hypergraph::uniform(n, 3, edges)?;
    let mut labels = BTreeMap::new();
    for i in 1..=half {
        labels.insert(format!("a{i}"), a(i));
        labels.insert(format!("b{i}"), b(i));
    }
    Ok(LabeledConstruction { hypergraph, labels })
}

/// The 3-uniform family whose edges are `{b₁, a_i, b_j}` over all `a_i`
/// and all `b_j ≠ b₁`. Same labeling as [`construct_h1`]. Requires `n`
/// even, `n ≥ 4`.
pub fn construct_h2(n: usize) -> Result<LabeledConstruction, Error> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "h2 requires even n ≥ 4, got {n}"
        )));
    }
    let half = n / 2;
    let a = |i: usize| i - 1;
    let b = |j: usize| half + j - 1;
    let mut edges = Vec::new();
    for i in 1..=half {
        for j in 2..=half {
            edges.push(vec![b(1), a(i), b(j)]);
        }
    }
    let hypergraph = Hypergraph::uniform(n, 3, edges)?;
    let mut labels = BTreeMap::new();
    for i in 1..=half {
        labels.insert(format!("a{i}"), a(i));
        labels.insert(format!("b{i}"), b(i));
    }
    Ok(LabeledConstruction { hypergraph, labels })
}

/// The k-uniform transversal family over `t` equitable parts: every k-set
/// meeting each part in at most one vertex. Its shadow is the Turán graph
/// `T(n,t)`. Parts are consecutive vertex ranges, the first `n mod t`
/// parts one vertex larger; labels `p{i}v{j}` record the layout.
pub fn construct_turan(n: usize, k: usize, t: usize) -> Result<LabeledConstruction, Error> {
    if k < 2 {
        return Err(Error::Precondition(format!("k must be ≥ 2, got {k}")));
    }
    if t < k {
        return Err(Error::Precondition(format!(
            "transversal family needs t ≥ k, got t={t}, k={k}"
        )));
    }
    let base = n / t;
    let extra = n % t;
    let mut parts: Vec<Vec<usize>> = Vec::with_capacity(t);
    let mut next = 0;
    for i in 0..t {
        let size = base + usize::from(i < extra);
        parts.push((next..next + size).collect());
        next += size;
    }

    // choose k parts, then one vertex from each
    let mut edges = Vec::new();
    let mut chosen_parts: Vec<usize> = (0..k).collect();
    loop {
        let mut picks = vec![0usize; k];
        'vertices: loop {
            if chosen_parts.iter().all(|&p| !parts[p].is_empty()) {
                let edge: Vec<usize> = chosen_parts
                    .iter()
                    .zip(&picks)
                    .map(|(&p, &i)| parts[p][i])
                    .collect();
                edges.push(edge);
            } else {
                break 'vertices;
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    break 'vertices;
                }
                pos -= 1;
                picks[pos] += 1;
                if picks[pos] < parts[chosen_parts[pos]].len() {
                    break;
                }
                picks[pos] = 0;
            }
        }
        // next k-combination of parts
        let mut i = k as isize - 1;
        while i >= 0 && chosen_parts[i as usize] == t - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let i = i as usize;
        chosen_parts[i] += 1;
        for j in i + 1..k {
            chosen_parts[j] = chosen_parts[j - 1] + 1;
        }
    }

    let hypergraph = Hypergraph::uniform(n, k, edges)?;
    let mut labels = BTreeMap::new();
    for (p, verts) in parts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate() {
            labels.insert(format!("p{p}v{j}"), v);
        }
    }
    Ok(LabeledConstruction { hypergraph, labels })
}

/// Materializes the blowup graph of `spec`: fibers are independent sets of
/// consecutive vertices, non-matching base edges become complete bipartite
/// graphs, and matching base edges pair fiber vertices of equal local
/// index (a maximum matching of size `min(sᵢ, sⱼ)`).
pub fn blowup(spec: &BlowupSpec) -> Graph {
    let offsets: Vec<usize> = spec
        .sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = spec.sizes.iter().sum();
    let mut g = Graph::empty(total);
    for (a, b) in spec.base.edges() {
        if spec.matching_edges.contains(&(a, b)) {
            for l in 0..spec.sizes[a].min(spec.sizes[b]) {
                g.add_edge(offsets[a] + l, offsets[b] + l);
            }
        } else {
            for x in 0..spec.sizes[a] {
                for y in 0..spec.sizes[b] {
                    g.add_edge(offsets[a] + x, offsets[b] + y);
                }
            }
        }
    }
    g
}

/// Splits each left-part vertex `a` of a bipartite graph into a pair
/// `a₁, a₂` and emits one hyperedge `{a₁, a₂, b}` per edge `{a, b}`.
///
/// `part_a` declares the left part; edges inside either declared part are
/// rejected. Vertex layout: the pairs for `part_a` (in the given order)
/// come first, then the remaining vertices of `hprime`. Labels:
/// `a{v}_1`, `a{v}_2`, `b{v}` keyed by original vertex id.
pub fn split_construction(hprime: &Graph, part_a: &[usize]) -> Result<LabeledConstruction, Error> {
    let mut in_a = vec![false; hprime.n()];
    for &v in part_a {
        if v >= hprime.n() {
            return Err(Error::Validation(format!(
                "part vertex {v} out of range for n={}",
                hprime.n()
            )));
        }
        if in_a[v] {
            return Err(Error::Validation(format!("part vertex {v} repeated")));
        }
        in_a[v] = true;
    }
    for (u, v) in hprime.edges() {
        if in_a[u] == in_a[v] {
            return Err(Error::Validation(format!(
                "edge ({u},{v}) lies inside one declared part; input must be bipartite"
            )));
        }
    }

    let mut labels = BTreeMap::new();
    let mut id_of_a = vec![usize::MAX; hprime.n()];
    for (k, &v) in part_a.iter().enumerate() {
        id_of_a[v] = 2 * k;
        labels.insert(format!("a{v}_1"), 2 * k);
        labels.insert(format!("a{v}_2"), 2 * k + 1);
    }
    let mut id_of_b = vec![usize::MAX; hprime.n()];
    let mut next = 2 * part_a.len();
    for v in 0..hprime.n() {
        if !in_a[v] {
            id_of_b[v] = next;
            labels.insert(format!("b{v}"), next);
            next += 1;
        }
    }

    let mut edges = Vec::new();
    for (u, v) in hprime.edges() {
        let (a, b) = if in_a[u] { (u, v) } else { (v, u) };
        edges.push(vec![id_of_a[a], id_of_a[a] + 1, id_of_b[b]]);
    }
    let hypergraph = Hypergraph::uniform(next, 3, edges)?;
    Ok(LabeledConstruction { hypergraph, labels })
}

/// How [`shrink`] picks the m-subset of each hyperedge.
#[derive(Clone, Copy, Debug)]
pub enum ShrinkMode {
    /// Uniform random m-subsets from a seeded generator.
    Seeded(u64),
    /// Conditional-expectation choices; guarantees the shrunk shadow keeps
    /// at least a `C(m,2)/C(M,2)` fraction of the original shadow edges,
    /// where `M = max(R)`.
    Derandomized,
}

/// Shrinks every hyperedge to `m` vertices, producing an m-uniform family.
///
/// In derandomized mode the edges are processed in stored order; for each
/// edge the m-subset is chosen to maximize the exact conditional
/// expectation of the final shadow size (ties: lexicographically least
/// subset). Requires `2 ≤ m ≤ min` edge cardinality.
pub fn shrink(h: &Hypergraph, m: usize, mode: ShrinkMode) -> Result<Hypergraph, Error> {
    if m < 2 {
        return Err(Error::Precondition(format!("m must be ≥ 2, got {m}")));
    }
    if let Some(e) = h.edges().iter().find(|e| e.len() < m) {
        return Err(Error::Precondition(format!(
            "m={m} exceeds the size of hyperedge {:?}",
            e.vertices()
        )));
    }
    let chosen = match mode {
        ShrinkMode::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            h.edges()
                .iter()
                .map(|e| {
                    let mut sub: Vec<usize> = sample(&mut rng, e.len(), m)
                        .into_iter()
                        .map(|i| e.vertices()[i])
                        .collect();
                    sub.sort_unstable();
                    sub
                })
                .collect::<Vec<_>>()
        }
        ShrinkMode::Derandomized => derandomized_choices(h, m),
    };
    Hypergraph::uniform(h.n(), m, chosen)
}

/// One choice per edge, maximizing at each step the exact expected shadow
/// size `Σ_pairs [1 − Π_h (1 − p_h(pair))]` where unprocessed edges pick
/// their m-subset uniformly at random.
fn derandomized_choices(h: &Hypergraph, m: usize) -> Vec<Vec<usize>> {
    // survival[p] = Π over undecided-or-decided edges h ∌→ p of (1 − p_h(p)),
    // maintained as the product over all edges except the one being decided.
    // For an undecided edge of size c, p_h(pair ⊆ h) = m(m−1)/(c(c−1)).
    let q_undecided = |c: usize| -> BigRational {
        BigRational::new(
            BigInt::from(m * (m - 1)),
            BigInt::from(c * (c - 1)),
        )
    };

    // factor[edge][pair-in-edge] = current (1 − q) contribution of that edge
    let mut factors: Vec<BTreeMap<(usize, usize), BigRational>> = h
        .edges()
        .iter()
        .map(|e| {
            let miss = BigRational::one() - q_undecided(e.len());
            e.pairs().map(|p| (p, miss.clone())).collect()
        })
        .collect();

    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(h.edge_count());
    for idx in 0..h.edge_count() {
        let edge = &h.edges()[idx];
        let verts = edge.vertices();
        // residual miss-probability of each pair, excluding this edge
        let mut residual: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for p in edge.pairs() {
            let mut r = BigRational::one();
            for (other, f) in factors.iter().enumerate() {
                if other != idx {
                    if let Some(v) = f.get(&p) {
                        r *= v.clone();
                    }
                }
            }
            residual.insert(p, r);
        }
        // the conditional expectation differs across choices only through
        // Σ residual(p) over pairs inside the chosen subset: maximize it
        let mut best: Option<(BigRational, Vec<usize>)> = None;
        let mut comb: Vec<usize> = (0..m).collect();
        loop {
            let subset: Vec<usize> = comb.iter().map(|&i| verts[i]).collect();
            let mut gain = BigRational::zero();
            for (i, &u) in subset.iter().enumerate() {
                for &v in &subset[i + 1..] {
                    gain += residual[&(u, v)].clone();
                }
            }
            let better = match &best {
                None => true,
                Some((g, s)) => gain > *g || (gain == *g && subset < *s),
            };
            if better {
                best = Some((gain, subset));
            }
            let mut i = m as isize - 1;
            while i >= 0 && comb[i as usize] == verts.len() - m + i as usize {
                i -= 1;
            }
            if i < 0 {
                break;
            }
            let i = i as usize;
            comb[i] += 1;
            for j in i + 1..m {
                comb[j] = comb[j - 1] + 1;
            }
        }
        let (_, subset) = best.expect("at least one m-subset exists");
        // this edge is now decided: it covers exactly the subset's pairs
        let mut decided = BTreeMap::new();
        for p in edge.pairs() {
            let inside =
                subset.contains(&p.0) && subset.contains(&p.1);
            let miss = if inside {
                BigRational::zero()
            } else {
                BigRational::one()
            };
            decided.insert(p, miss);
        }
        factors[idx] = decided;
        choices.push(subset);
    }
    choices
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{contains_berge, BergeOutcome};
    use crate::Budget;

    #[test]
    fn h1_counts_and_small_instance() {
        let c = construct_h1(8).unwrap();
        assert_eq!(c.hypergraph.edge_count(), 8);
        assert_eq!(c.hypergraph.shadow().edge_count(), 18);

        let tiny = construct_h1(4).unwrap();
        let verts: Vec<_> = tiny
            .hypergraph
            .edges()
            .iter()
            .map(|e| e.vertices().to_vec())
            .collect();
        assert_eq!(verts, vec![vec![0, 2, 3], vec![1, 2, 3]]);

        assert!(construct_h1(6).is_err());
        assert!(construct_h1(0).is_err());
    }

    #[test]
    fn h2_counts_and_small_instance() {
        let c = construct_h2(8).unwrap();
        assert_eq!(c.hypergraph.edge_count(), 12);
        assert_eq!(c.hypergraph.shadow().edge_count(), 19);

        let tiny = construct_h2(4).unwrap();
        assert_eq!(tiny.hypergraph.edge_count(), 2);

        assert!(construct_h2(5).is_err());
        assert!(construct_h2(2).is_err());
    }

    #[test]
    fn h2_shadow_minus_b1_is_complete_bipartite() {
        let c = construct_h2(8).unwrap();
        let shadow = c.hypergraph.shadow();
        let b1 = c.labels["b1"];
        for i in 1..=4usize {
            for j in 2..=4usize {
                assert!(shadow.graph().has_edge(c.labels[&format!("a{i}")], c.labels[&format!("b{j}")]));
            }
        }
        let rest = shadow.graph().delete_vertex(b1);
        assert_eq!(rest.edge_count(), 12); // K_{4,3}
        assert!(rest.bipartition().is_some());
    }

    #[test]
    fn turan_counts() {
        let c = construct_turan(6, 3, 3).unwrap();
        assert_eq!(c.hypergraph.edge_count(), 8);
        assert_eq!(c.hypergraph.shadow().edge_count(), 12);

        let c = construct_turan(9, 3, 3).unwrap();
        assert_eq!(c.hypergraph.edge_count(), 27);
        assert_eq!(c.hypergraph.shadow().edge_count(), 27);

        let c = construct_turan(10, 3, 3).unwrap();
        assert_eq!(c.hypergraph.shadow().edge_count(), 33);

        assert!(construct_turan(6, 3, 2).is_err());
    }

    #[test]
    fn blowup_examples() {
        let identity = BlowupSpec::uniform(Graph::cycle(5), 1, []).unwrap();
        assert_eq!(blowup(&identity), Graph::cycle(5));

        let full = BlowupSpec::uniform(Graph::cycle(3), 2, []).unwrap();
        assert_eq!(blowup(&full).edge_count(), 12);

        let matched = BlowupSpec::uniform(Graph::cycle(3), 2, [(0, 1)]).unwrap();
        let g = blowup(&matched);
        assert_eq!(g.edge_count(), 10);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 3));
        assert!(!g.has_edge(0, 3) && !g.has_edge(1, 2));
    }

    #[test]
    fn split_single_edge_and_star() {
        let single = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let c = split_construction(&single, &[0]).unwrap();
        assert_eq!(c.hypergraph.edge_count(), 1);
        assert_eq!(c.hypergraph.edges()[0].vertices(), &[0, 1, 2]);

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = split_construction(&star, &[0]).unwrap();
        assert_eq!(c.hypergraph.n(), 5);
        let verts: Vec<_> = c
            .hypergraph
            .edges()
            .iter()
            .map(|e| e.vertices().to_vec())
            .collect();
        assert_eq!(verts, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]);

        assert!(split_construction(&Graph::cycle(3), &[0]).is_err());
    }

    #[test]
    fn split_star_has_no_berge_k22() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = split_construction(&star, &[0]).unwrap();
        let k22 = Graph::complete_bipartite(2, 2);
        assert_eq!(
            contains_berge(&c.hypergraph, &k22, &Budget::unlimited()),
            BergeOutcome::Absent
        );
    }

    #[test]
    fn shrink_single_and_disjoint_edges() {
        let one = Hypergraph::uniform(4, 4, [vec![0, 1, 2, 3]]).unwrap();
        let s = shrink(&one, 3, ShrinkMode::Derandomized).unwrap();
        assert_eq!(s.shadow().edge_count(), 3);

        let two = Hypergraph::uniform(8, 4, [vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
        let s = shrink(&two, 3, ShrinkMode::Derandomized).unwrap();
        assert_eq!(s.shadow().edge_count(), 6);
        let s = shrink(&two, 3, ShrinkMode::Seeded(7)).unwrap();
        assert_eq!(s.shadow().edge_count(), 6);

        assert!(shrink(&two, 5, ShrinkMode::Derandomized).is_err());
        assert!(shrink(&two, 1, ShrinkMode::Derandomized).is_err());
    }

    #[test]
    fn shrink_outputs_are_subsets() {
        let h = Hypergraph::new(
            6,
            [3, 4],
            [vec![0, 1, 2, 3], vec![2, 3, 4, 5], vec![0, 4, 5]],
        )
        .unwrap();
        for mode in [ShrinkMode::Seeded(1), ShrinkMode::Derandomized] {
            let s = shrink(&h, 3, mode).unwrap();
            assert!(s.r().contains(&3) && s.r().len() == 1);
            for se in s.edges() {
                assert!(h.edges().iter().any(|he| se
                    .vertices()
                    .iter()
                    .all(|&v| he.contains(v))));
            }
        }
    }
}
