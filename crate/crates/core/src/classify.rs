//! Classification of pattern graphs for 3-uniform hosts: the two
//! degeneracy conditions with witnesses, the blowup characterization,
//! exact chromatic number, and the density oracle.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::embed::{contains_in_blowup, BlowupSpec};
use crate::graph::Graph;
use crate::Error;

/// Exact rational in `[0,1]`, displayed and serialized as `p/q`
/// (or a bare integer when the denominator is 1).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        Rational(Ratio::new(0, 1))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn as_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((num, den)) => {
                let d = parse(den)?;
                if d == 0 {
                    return Err(Error::Parse(format!("bad rational {s:?}: zero denominator")));
                }
                Ok(Rational(Ratio::new(parse(num)?, d)))
            }
            None => Ok(Rational(Ratio::new(parse(s)?, 1))),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact chromatic number, by iterative deepening over the color count
/// starting from a greedy clique lower bound. Capped at 32 vertices.
pub fn chromatic_number(g: &Graph) -> Result<usize, Error> {
    if g.n() > 32 {
        return Err(Error::SizeCap {
            what: "chromatic_number",
            limit: 32,
            got: g.n(),
        });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    // greedy clique along the degree order
    let mut clique: Vec<usize> = Vec::new();
    for &v in &order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }

    let mut k = clique.len().max(1);
    loop {
        if colorable(g, &order, k) {
            return Ok(k);
        }
        k += 1;
    }
}

/// Branch-and-bound k-colorability; new colors only open one at a time,
/// which kills color-permutation symmetry.
fn colorable(g: &Graph, order: &[usize], k: usize) -> bool {
    fn rec(g: &Graph, order: &[usize], k: usize, depth: usize, max_used: usize, color: &mut [usize]) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for c in 0..k.min(max_used + 2) {
            if g.neighbors(v).all(|u| color[u] != c) {
                color[v] = c;
                if rec(g, order, k, depth + 1, max_used.max(c), color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    let mut color = vec![usize::MAX; g.n()];
    rec(g, order, k, 0, 0, &mut color)
}

/// Witness for the first degeneracy condition: a vertex whose removal
/// leaves a bipartite graph, with the bipartition (original vertex ids).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Cond1Witness {
    pub removed: usize,
    pub side0: Vec<usize>,
    pub side1: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Condition1Report {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Cond1Witness>,
    /// A triangle refuting the condition, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle: Option<[usize; 3]>,
}

/// Condition 1: `g` is triangle-free and deleting some single vertex
/// leaves a bipartite graph. Graphs with at most one vertex qualify.
pub fn condition1(g: &Graph) -> Condition1Report {
    if let Some(t) = g.find_triangle() {
        return Condition1Report {
            holds: false,
            witness: None,
            triangle: Some(t),
        };
    }
    if g.n() <= 1 {
        let witness = (g.n() == 1).then(|| Cond1Witness {
            removed: 0,
            side0: vec![],
            side1: vec![],
        });
        return Condition1Report {
            holds: true,
            witness,
            triangle: None,
        };
    }
    for v in 0..g.n() {
        if let Some((s0, s1)) = g.delete_vertex(v).bipartition() {
            let back = |x: usize| if x >= v { x + 1 } else { x };
            return Condition1Report {
                holds: true,
                witness: Some(Cond1Witness {
                    removed: v,
                    side0: s0.into_iter().map(back).collect(),
                    side1: s1.into_iter().map(back).collect(),
                }),
                triangle: None,
            };
        }
    }
    Condition1Report {
        holds: false,
        witness: None,
        triangle: None,
    }
}

/// Witness for the second degeneracy condition: a vertex partition with
/// all edges either crossing, or forming a matching inside `matching_side`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Cond2Witness {
    pub matching_side: Vec<usize>,
    pub independent_side: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Condition2Report {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Cond2Witness>,
}

/// Condition 2: the vertices split into a side inducing a matching
/// (max degree ≤ 1) and a side inducing no edge at all. Decided exactly
/// by branching over the two sides per vertex; capped at 32 vertices.
pub fn condition2(g: &Graph) -> Result<Condition2Report, Error> {
    if g.n() > 32 {
        return Err(Error::SizeCap {
            what: "condition2",
            limit: 32,
            got: g.n(),
        });
    }

    const UNSET: u8 = 2;
    const MATCHING: u8 = 0;
    const INDEPENDENT: u8 = 1;

    fn rec(g: &Graph, v: usize, side: &mut [u8], p1_deg: &mut [usize]) -> bool {
        if v == g.n() {
            return true;
        }
        // matching side: at most one placed neighbor there, itself unmatched
        let placed_matching: Vec<usize> = g
            .neighbors(v)
            .filter(|&u| u < v && side[u] == MATCHING)
            .collect();
        if placed_matching.len() <= 1 && placed_matching.iter().all(|&u| p1_deg[u] == 0) {
            side[v] = MATCHING;
            for &u in &placed_matching {
                p1_deg[u] += 1;
            }
            p1_deg[v] = placed_matching.len();
            if rec(g, v + 1, side, p1_deg) {
                return true;
            }
            for &u in &placed_matching {
                p1_deg[u] -= 1;
            }
            p1_deg[v] = 0;
        }
        // independent side: no placed neighbor there
        if g.neighbors(v).all(|u| u >= v || side[u] != INDEPENDENT) {
            side[v] = INDEPENDENT;
            if rec(g, v + 1, side, p1_deg) {
                return true;
            }
        }
        side[v] = UNSET;
        false
    }

    let mut side = vec![UNSET; g.n()];
    let mut p1_deg = vec![0usize; g.n()];
    if rec(g, 0, &mut side, &mut p1_deg) {
        let pick = |s: u8| (0..g.n()).filter(|&v| side[v] == s).collect();
        Ok(Condition2Report {
            holds: true,
            witness: Some(Cond2Witness {
                matching_side: pick(MATCHING),
                independent_side: pick(INDEPENDENT),
            }),
        })
    } else {
        Ok(Condition2Report {
            holds: false,
            witness: None,
        })
    }
}

/// Both degeneracy conditions with their witnesses or refutations.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub cond1: Condition1Report,
    pub cond2: Condition2Report,
    pub degenerate: bool,
}

/// A pattern graph vanishes against 3-uniform hosts exactly when both
/// conditions hold.
pub fn is_3_degenerate_cover(g: &Graph) -> Result<DegeneracyReport, Error> {
    let cond1 = condition1(g);
    let cond2 = condition2(g)?;
    let degenerate = cond1.holds && cond2.holds;
    Ok(DegeneracyReport {
        cond1,
        cond2,
        degenerate,
    })
}

/// Result of the two-blowup containment test with `s = |V(G)|`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlowupCharacterization {
    pub s: usize,
    pub contained: bool,
    /// Fiber assignment into the pointed 5-cycle blowup, when it exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c5_assignment: Option<Vec<usize>>,
    /// Fiber assignment into the matched-edge triangle blowup, when it exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c3_assignment: Option<Vec<usize>>,
}

/// Tests containment in both `C₅(1,s,s,s,s)` and `C₃(s,s,s)` with one
/// matched edge, taking `s = |V(G)|`. Containment is monotone in `s` and
/// no embedding needs more than `|V(G)|` vertices per fiber, so this `s`
/// decides the "for some s" form. Capped at 16 vertices.
pub fn blowup_characterization(g: &Graph) -> Result<BlowupCharacterization, Error> {
    if g.n() > 16 {
        return Err(Error::SizeCap {
            what: "blowup_characterization",
            limit: 16,
            got: g.n(),
        });
    }
    let s = g.n().max(1);
    let c5 = BlowupSpec::new(Graph::cycle(5), vec![1, s, s, s, s], [])?;
    let c3 = BlowupSpec::uniform(Graph::cycle(3), s, [(0, 1)])?;
    let c5_assignment = contains_in_blowup(g, &c5);
    let c3_assignment = contains_in_blowup(g, &c3);
    Ok(BlowupCharacterization {
        s,
        contained: c5_assignment.is_some() && c3_assignment.is_some(),
        c5_assignment,
        c3_assignment,
    })
}

/// Which part of the density classification produced the reported value.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum DensityRule {
    /// χ(G) ≥ k+1: the transversal construction meets the upper bound.
    HighChromatic,
    /// 3-uniform host, both degeneracy conditions hold: density 0.
    Degenerate,
    /// 3-uniform host, χ ≤ 3 and not degenerate: density 1/2.
    ThreeUniformHalf,
    /// χ ≤ 2: the general upper bound is already 0.
    VanishingUpperBound,
    /// Nothing in scope decides the value; only bounds are reported.
    BoundsOnly,
}

/// Density classification of one pattern graph against `k`-uniform hosts.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DensityReport {
    pub k: usize,
    pub chromatic: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Rational>,
    pub lower: Rational,
    pub upper: Rational,
    pub rule: DensityRule,
}

/// `1 − 1/(χ−1)` for χ ≥ 3; for χ ≤ 2 every large enough host contains
/// the pattern, so the bound collapses to 0.
fn general_upper_bound(chromatic: usize) -> Rational {
    if chromatic <= 2 {
        Rational::zero()
    } else {
        Rational::new(chromatic as i64 - 2, chromatic as i64 - 1)
    }
}

/// The full classification for 3-uniform hosts: `1 − 1/(χ−1)` when
/// χ ≥ 4, zero for degenerate patterns, 1/2 otherwise.
pub fn cover_density_3(g: &Graph) -> Result<DensityReport, Error> {
    let chromatic = chromatic_number(g)?;
    if chromatic >= 4 {
        let v = general_upper_bound(chromatic);
        return Ok(DensityReport {
            k: 3,
            chromatic,
            exact: Some(v),
            lower: v,
            upper: v,
            rule: DensityRule::HighChromatic,
        });
    }
    let report = is_3_degenerate_cover(g)?;
    let upper = general_upper_bound(chromatic);
    if report.degenerate {
        Ok(DensityReport {
            k: 3,
            chromatic,
            exact: Some(Rational::zero()),
            lower: Rational::zero(),
            upper,
            rule: DensityRule::Degenerate,
        })
    } else {
        debug_assert_eq!(chromatic, 3, "non-degenerate patterns have χ = 3");
        let half = Rational::new(1, 2);
        Ok(DensityReport {
            k: 3,
            chromatic,
            exact: Some(half),
            lower: half,
            upper,
            rule: DensityRule::ThreeUniformHalf,
        })
    }
}

/// Density against `k`-uniform hosts. Exact when χ ≥ k+1 or the general
/// upper bound vanishes; `k = 3` delegates to the full classification;
/// otherwise only the bounds are reported.
pub fn cover_density_k(g: &Graph, k: usize) -> Result<DensityReport, Error> {
    if k < 2 {
        return Err(Error::Precondition(format!("uniformity must be ≥ 2, got {k}")));
    }
    let chromatic = chromatic_number(g)?;
    if chromatic > k {
        let v = general_upper_bound(chromatic);
        return Ok(DensityReport {
            k,
            chromatic,
            exact: Some(v),
            lower: v,
            upper: v,
            rule: DensityRule::HighChromatic,
        });
    }
    if k == 3 {
        return cover_density_3(g);
    }
    let upper = general_upper_bound(chromatic);
    if chromatic <= 2 {
        // upper bound is already 0, which pins the value
        return Ok(DensityReport {
            k,
            chromatic,
            exact: Some(Rational::zero()),
            lower: Rational::zero(),
            upper,
            rule: DensityRule::VanishingUpperBound,
        });
    }
    Ok(DensityReport {
        k,
        chromatic,
        exact: None,
        lower: Rational::zero(),
        upper,
        rule: DensityRule::BoundsOnly,
    })
}

/// Re-verifies a condition-1 witness by direct inspection, independently
/// of the search that produced it.
pub fn verify_cond1_witness(g: &Graph, w: &Cond1Witness) -> bool {
    if g.find_triangle().is_some() || w.removed >= g.n() {
        return false;
    }
    let mut side = vec![u8::MAX; g.n()];
    side[w.removed] = 2;
    for (s, verts) in [(0u8, &w.side0), (1u8, &w.side1)] {
        for &v in verts {
            if v >= g.n() || side[v] != u8::MAX {
                return false;
            }
            side[v] = s;
        }
    }
    if side.contains(&u8::MAX) {
        return false;
    }
    g.edges()
        .iter()
        .all(|&(u, v)| side[u] == 2 || side[v] == 2 || side[u] != side[v])
}

/// Re-verifies a condition-2 witness: the independent side spans no edge
/// and the matching side induces maximum degree ≤ 1.
pub fn verify_cond2_witness(g: &Graph, w: &Cond2Witness) -> bool {
    let mut side = vec![u8::MAX; g.n()];
    for (s, verts) in [(0u8, &w.matching_side), (1u8, &w.independent_side)] {
        for &v in verts {
            if v >= g.n() || side[v] != u8::MAX {
                return false;
            }
            side[v] = s;
        }
    }
    if side.contains(&u8::MAX) {
        return false;
    }
    let mut matched = vec![0usize; g.n()];
    for (u, v) in g.edges() {
        if side[u] == 1 && side[v] == 1 {
            return false;
        }
        if side[u] == 0 && side[v] == 0 {
            matched[u] += 1;
            matched[v] += 1;
            if matched[u] > 1 || matched[v] > 1 {
                return false;
            }
        }
    }
    true
}

/// Diagnostics for the split-construction preconditions.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SplitPreconditionReport {
    pub holds: bool,
    pub bipartite: bool,
    pub connected: bool,
    /// An edge lying in no 4-cycle, if one refutes the condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_not_in_c4: Option<(usize, usize)>,
    /// A same-part vertex pair without a common neighbor, if one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_without_common_neighbor: Option<(usize, usize)>,
}

/// Checks the split-construction hypotheses exhaustively: the graph is
/// connected and bipartite, every edge lies in a 4-cycle, and every two
/// vertices of the same part share a neighbor.
pub fn split_preconditions(g: &Graph) -> SplitPreconditionReport {
    let bipartition = g.bipartition();
    let connected = g.is_connected();
    let Some((side0, side1)) = bipartition else {
        return SplitPreconditionReport {
            holds: false,
            bipartite: false,
            connected,
            edge_not_in_c4: None,
            pair_without_common_neighbor: None,
        };
    };
    if !connected {
        return SplitPreconditionReport {
            holds: false,
            bipartite: true,
            connected: false,
            edge_not_in_c4: None,
            pair_without_common_neighbor: None,
        };
    }

    for (u, v) in g.edges() {
        let in_c4 = g.neighbors(u).any(|x| {
            x != v
                && g
                    .neighbors(v)
                    .any(|y| y != u && y != x && g.has_edge(x, y))
        });
        if !in_c4 {
            return SplitPreconditionReport {
                holds: false,
                bipartite: true,
                connected: true,
                edge_not_in_c4: Some((u, v)),
                pair_without_common_neighbor: None,
            };
        }
    }

    for part in [&side0, &side1] {
        for (i, &u) in part.iter().enumerate() {
            for &v in &part[i + 1..] {
                let common = g.neighbor_set(u).intersects(g.neighbor_set(v));
                if !common {
                    return SplitPreconditionReport {
                        holds: false,
                        bipartite: true,
                        connected: true,
                        edge_not_in_c4: None,
                        pair_without_common_neighbor: Some((u, v)),
                    };
                }
            }
        }
    }

    SplitPreconditionReport {
        holds: true,
        bipartite: true,
        connected: true,
        edge_not_in_c4: None,
        pair_without_common_neighbor: None,
    }
}
