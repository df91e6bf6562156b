//! Exact cover-Turán values at desk scale: the maximum shadow size over
//! Berge-free families, with a verified witness.

use std::collections::BTreeMap;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::canon::{canonical_hypergraph, CANON_MAX_N};
use crate::embed::{contains_berge, contains_berge_via, BergeOutcome};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// The state space was exhausted; `value` is the exact maximum.
    Exact,
    /// The budget ran out; `value` is only a lower bound.
    LowerBoundOnly,
}

/// Outcome of [`exact_cover_turan`]. The witness is Berge-free, achieves
/// `value` shadow edges, and is emitted in canonical labeling whenever the
/// canonicalizer covers the vertex count.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub value: usize,
    pub witness: Hypergraph,
    pub status: SearchStatus,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// True iff `h` contains no Berge copy of `g`; budget exhaustion is an
/// error, never a silent "false".
pub fn verify_berge_free(h: &Hypergraph, g: &Graph, budget: &Budget) -> Result<bool, Error> {
    match contains_berge(h, g, budget) {
        BergeOutcome::Absent => Ok(true),
        BergeOutcome::Found(_) => Ok(false),
        BergeOutcome::Unknown => Err(Error::BudgetExhausted),
    }
}

/// Key under which explored families are deduplicated. Canonical within
/// the canonicalizer's range, identity beyond it (correct, only slower).
fn family_key(h: &Hypergraph) -> Result<(Vec<u8>, Hypergraph), Error> {
    if h.n() <= CANON_MAX_N {
        let (canonical, form) = canonical_hypergraph(h)?;
        Ok((form.as_bytes().to_vec(), canonical))
    } else {
        let mut key = Vec::new();
        for e in h.edges() {
            key.extend([0xff, 0xff]);
            for &v in e.vertices() {
                key.extend((v as u32).to_be_bytes());
            }
        }
        Ok((key, h.clone()))
    }
}

fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Everything expanding one family produces: its surviving children and
/// the optimistic bound on any completion of the family.
struct Expansion {
    children: Vec<(Vec<u8>, Hypergraph, usize)>,
    bound: usize,
    nodes: u64,
    exhausted: bool,
}

/// Candidate hyperedges: every vertex subset with cardinality in `R`,
/// lexicographic within each cardinality.
fn edge_universe(n: usize, r: &std::collections::BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut universe = Vec::new();
    for &k in r {
        if k > n {
            continue;
        }
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            universe.push(comb.clone());
            let mut i = k as isize - 1;
            while i >= 0 && comb[i as usize] == n - k + i as usize {
                i -= 1;
            }
            if i < 0 {
                break;
            }
            let i = i as usize;
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    universe
}

/// Every hyperedge must own a pair no other hyperedge covers. Families
/// violating this can never be repaired by adding more edges, so the
/// constraint prunes hereditarily; the optimum is unaffected because any
/// maximizer reduces to an edge-minimal family with the same shadow.
fn is_edge_minimal(h: &Hypergraph) -> bool {
    let shadow = h.shadow();
    let mut owners = vec![false; h.edge_count()];
    for ids in shadow.covers().values() {
        if ids.len() == 1 {
            owners[ids[0]] = true;
        }
    }
    owners.into_iter().all(|b| b)
}

fn expand(
    family: &Hypergraph,
    g: &Graph,
    universe: &[Vec<usize>],
    berge_budget: &Budget,
) -> Result<Expansion, Error> {
    let family_shadow = family.shadow();
    let mut children = Vec::new();
    let mut optimistic: std::collections::BTreeSet<(usize, usize)> = Default::default();
    let mut nodes = 0u64;
    let mut exhausted = false;
    let existing: std::collections::BTreeSet<&[usize]> =
        family.edges().iter().map(|e| e.vertices()).collect();

    for cand in universe {
        if existing.contains(cand.as_slice()) {
            continue;
        }
        let mut edges: Vec<Vec<usize>> = family
            .edges()
            .iter()
            .map(|e| e.vertices().to_vec())
            .collect();
        edges.push(cand.clone());
        let child = Hypergraph::new(family.n(), family.r().iter().copied(), edges)?;
        nodes += 1;
        if !is_edge_minimal(&child) {
            continue;
        }
        let new_idx = child
            .edges()
            .iter()
            .position(|e| e.vertices() == cand.as_slice())
            .expect("candidate edge is present in the child");
        match contains_berge_via(&child, g, new_idx, berge_budget) {
            BergeOutcome::Absent => {}
            BergeOutcome::Found(_) => continue,
            BergeOutcome::Unknown => {
                exhausted = true;
                continue;
            }
        }
        let value = child.shadow().edge_count();
        let (key, canonical) = family_key(&child)?;
        for (i, &u) in cand.iter().enumerate() {
            for &v in &cand[i + 1..] {
                optimistic.insert((u, v));
            }
        }
        children.push((key, canonical, value));
    }

    // optimism: pairs some feasible extension could still add. Feasibility
    // only shrinks as the family grows, so this bounds every completion.
    let newly_coverable = optimistic
        .iter()
        .filter(|&&(u, v)| family_shadow.covering(u, v).is_empty())
        .count();
    Ok(Expansion {
        children,
        bound: family_shadow.edge_count() + newly_coverable,
        nodes,
        exhausted,
    })
}

/// Maximum shadow-edge count over Berge-`g`-free `R`-graphs on `n`
/// vertices, by breadth-first exploration of edge-minimal free families
/// with isomorphism rejection and monotone incumbent pruning.
///
/// The final `(value, status)` does not depend on the worker count: the
/// incumbent used for pruning is fixed at each level boundary and pruning
/// only discards states that cannot strictly beat it.
pub fn exact_cover_turan(
    n: usize,
    r: impl IntoIterator<Item = usize>,
    g: &Graph,
    budget: &Budget,
) -> Result<SearchResult, Error> {
    let empty = Hypergraph::new(n, r, Vec::<Vec<usize>>::new())?;
    let clock = budget.start();

    if let BergeOutcome::Found(_) = contains_berge(&empty, g, budget) {
        return Err(Error::Precondition(format!(
            "every {:?}-graph on {n} vertices contains a Berge copy of the pattern; \
             the maximum is undefined",
            empty.r()
        )));
    }

    let universe = edge_universe(n, empty.r());
    let berge_budget = Budget {
        time: budget.time,
        nodes: None,
    };

    let (root_key, root) = family_key(&empty)?;
    let mut best_value = 0usize;
    let mut best_witness: (Vec<u8>, Hypergraph) = (root_key.clone(), root.clone());
    let mut level: BTreeMap<Vec<u8>, Hypergraph> = BTreeMap::from([(root_key, root)]);
    let mut nodes = 1u64;
    let mut status = SearchStatus::Exact;
    let cap = binomial2(n);

    while !level.is_empty() {
        if clock.exhausted_strict() || budget.nodes.is_some_and(|cap| nodes > cap) {
            status = SearchStatus::LowerBoundOnly;
            break;
        }
        let reps: Vec<&Hypergraph> = level.values().collect();
        let incumbent = best_value;
        let expansions: Result<Vec<Expansion>, Error> = reps
            .par_iter()
            .map(|rep| expand(rep, g, &universe, &berge_budget))
            .collect();
        let expansions = expansions?;

        let mut next: BTreeMap<Vec<u8>, Hypergraph> = BTreeMap::new();
        for exp in expansions {
            nodes += exp.nodes;
            if exp.exhausted {
                status = SearchStatus::LowerBoundOnly;
            }
            for (key, child, value) in &exp.children {
                if *value > best_value || (*value == best_value && *key < best_witness.0) {
                    best_value = *value;
                    best_witness = (key.clone(), child.clone());
                }
            }
            // a subtree that cannot strictly beat the level-start incumbent
            // is dropped; the value it could at best tie is already achieved
            if exp.bound > incumbent {
                for (key, child, _) in exp.children {
                    next.entry(key).or_insert(child);
                }
            }
        }
        if best_value == cap {
            // the shadow cannot exceed all pairs, so the incumbent is optimal
            break;
        }
        level = next;
    }

    let witness = best_witness.1;
    debug_assert_eq!(witness.shadow().edge_count(), best_value);
    debug_assert!(matches!(
        contains_berge(&witness, g, &Budget::unlimited()),
        BergeOutcome::Absent
    ));

    Ok(SearchResult {
        value: best_value,
        witness,
        status,
        nodes,
        elapsed: clock.elapsed(),
    })
}
