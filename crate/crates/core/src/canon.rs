//! Canonical forms for graphs and hypergraphs, and isomorph-free
//! enumeration of small graphs.
//!
//! Canonicalization runs color refinement first and then minimizes the
//! adjacency encoding over the orderings that respect the refined cells.
//! Equal forms mean isomorphic objects; the supported range is n ≤ 10.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::Error;

pub const CANON_MAX_N: usize = 10;

/// Relabel-invariant byte string: equal strings ⇔ isomorphic objects.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn check_cap(what: &'static str, n: usize) -> Result<(), Error> {
    if n > CANON_MAX_N {
        Err(Error::SizeCap {
            what,
            limit: CANON_MAX_N,
            got: n,
        })
    } else {
        Ok(())
    }
}

/// Ranks `keys` into dense color ids `0..k`, smallest key first.
fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

/// Color refinement on a graph. The returned colors are invariant under
/// relabeling because every round re-ranks signatures canonically.
fn refine_graph_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors = rank(&(0..n).map(|v| g.degree(v)).collect::<Vec<_>>());
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let next = rank(&signatures);
        let stable = count_distinct(&next) == count_distinct(&colors);
        colors = next;
        if stable {
            return colors;
        }
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// Positions grouped by refined color: `cells[c]` lists the vertices of
/// color class `c`; positions are filled cell by cell.
fn cells_of(colors: &[usize]) -> Vec<Vec<usize>> {
    let mut cells = vec![Vec::new(); count_distinct(colors)];
    for (v, &c) in colors.iter().enumerate() {
        cells[c].push(v);
    }
    cells
}

struct GraphCanon<'a> {
    g: &'a Graph,
    cell_at: Vec<usize>,
    cells: Vec<Vec<usize>>,
    placement: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl<'a> GraphCanon<'a> {
    fn run(g: &'a Graph) -> (Vec<bool>, Vec<usize>) {
        let cells = cells_of(&refine_graph_colors(g));
        let mut cell_at = Vec::with_capacity(g.n());
        for (c, cell) in cells.iter().enumerate() {
            cell_at.extend(std::iter::repeat_n(c, cell.len()));
        }
        let mut state = GraphCanon {
            g,
            cell_at,
            cells,
            placement: Vec::with_capacity(g.n()),
            used: vec![false; g.n()],
            bits: Vec::with_capacity(g.n() * (g.n().saturating_sub(1)) / 2),
            best: None,
        };
        state.dfs(0, true);
        state.best.expect("at least one ordering exists")
    }

    /// `tight` means the current prefix equals the best known prefix, so
    /// the next bit can still prune. The final acceptance always compares
    /// the full string.
    fn dfs(&mut self, pos: usize, tight: bool) {
        if pos == self.g.n() {
            if self.best.as_ref().is_none_or(|(b, _)| self.bits < *b) {
                self.best = Some((self.bits.clone(), self.placement.clone()));
            }
            return;
        }
        let candidates = self.cells[self.cell_at[pos]].clone();
        for v in candidates {
            if self.used[v] {
                continue;
            }
            let mut tight_here = tight;
            let mut worse = false;
            let base = self.bits.len();
            for q in 0..pos {
                let bit = self.g.has_edge(self.placement[q], v);
                if tight_here {
                    if let Some((best_bits, _)) = &self.best {
                        let b = best_bits[base + q];
                        if bit && !b {
                            worse = true;
                            break;
                        }
                        if !bit && b {
                            tight_here = false;
                        }
                    }
                }
                self.bits.push(bit);
            }
            if !worse {
                self.placement.push(v);
                self.used[v] = true;
                self.dfs(pos + 1, tight_here);
                self.placement.pop();
                self.used[v] = false;
            }
            self.bits.truncate(base);
        }
    }
}

fn pack_bits(bits: &[bool]) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            out[i / 8] |= 1 << (7 - i % 8);
        }
    }
    out
}

/// Canonical form of a graph.
pub fn canonical_form_graph(g: &Graph) -> Result<CanonicalForm, Error> {
    Ok(canonical_graph(g)?.1)
}

/// The canonically relabeled copy of `g` together with its form.
pub fn canonical_graph(g: &Graph) -> Result<(Graph, CanonicalForm), Error> {
    check_cap("canonical_form(graph)", g.n())?;
    if g.n() == 0 {
        return Ok((Graph::empty(0), CanonicalForm(vec![b'G', 0])));
    }
    let (bits, placement) = GraphCanon::run(g);
    // placement maps position -> old vertex; relabel wants old -> new
    let mut relabel = vec![0usize; g.n()];
    for (pos, &v) in placement.iter().enumerate() {
        relabel[v] = pos;
    }
    let mut bytes = vec![b'G', g.n() as u8];
    bytes.extend(pack_bits(&bits));
    Ok((g.relabel(&relabel), CanonicalForm(bytes)))
}

/// Color refinement on the vertex–edge incidence structure.
fn refine_hypergraph_colors(h: &Hypergraph) -> Vec<usize> {
    let n = h.n();
    let initial: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut sizes: Vec<usize> = h
                .edges()
                .iter()
                .filter(|e| e.contains(v))
                .map(|e| e.len())
                .collect();
            sizes.sort_unstable();
            sizes
        })
        .collect();
    let mut colors = rank(&initial);
    loop {
        let edge_sigs: Vec<(usize, Vec<usize>)> = h
            .edges()
            .iter()
            .map(|e| {
                let mut member_colors: Vec<usize> =
                    e.vertices().iter().map(|&v| colors[v]).collect();
                member_colors.sort_unstable();
                (e.len(), member_colors)
            })
            .collect();
        let edge_ranks = rank(&edge_sigs);
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut incident: Vec<usize> = h
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.contains(v))
                    .map(|(i, _)| edge_ranks[i])
                    .collect();
                incident.sort_unstable();
                (colors[v], incident)
            })
            .collect();
        let next = rank(&signatures);
        let stable = count_distinct(&next) == count_distinct(&colors);
        colors = next;
        if stable {
            return colors;
        }
    }
}

/// Canonical form of a hypergraph (vertex count, cardinality set, and the
/// minimal relabeled edge list over cell-respecting orderings).
pub fn canonical_form_hypergraph(h: &Hypergraph) -> Result<CanonicalForm, Error> {
    Ok(canonical_hypergraph(h)?.1)
}

/// The canonically relabeled copy of `h` together with its form.
pub fn canonical_hypergraph(h: &Hypergraph) -> Result<(Hypergraph, CanonicalForm), Error> {
    check_cap("canonical_form(hypergraph)", h.n())?;
    let cells = cells_of(&refine_hypergraph_colors(h));
    let mut relabel = vec![0usize; h.n()];
    let mut best: Option<Vec<Vec<usize>>> = None;

    fn assign(
        cells: &[Vec<usize>],
        cell: usize,
        taken: &mut Vec<bool>,
        relabel: &mut Vec<usize>,
        next_label: usize,
        h: &Hypergraph,
        best: &mut Option<Vec<Vec<usize>>>,
    ) {
        if cell == cells.len() {
            let mut edges: Vec<Vec<usize>> = h
                .edges()
                .iter()
                .map(|e| {
                    let mut verts: Vec<usize> =
                        e.vertices().iter().map(|&v| relabel[v]).collect();
                    verts.sort_unstable();
                    verts
                })
                .collect();
            edges.sort();
            if best.as_ref().is_none_or(|b| edges < *b) {
                *best = Some(edges);
            }
            return;
        }
        let members = &cells[cell];
        if members.iter().all(|&v| taken[v]) {
            assign(cells, cell + 1, taken, relabel, next_label, h, best);
            return;
        }
        for &v in members {
            if !taken[v] {
                taken[v] = true;
                relabel[v] = next_label;
                assign(cells, cell, taken, relabel, next_label + 1, h, best);
                taken[v] = false;
            }
        }
    }

    let mut taken = vec![false; h.n()];
    if h.n() == 0 {
        best = Some(Vec::new());
    } else {
        assign(&cells, 0, &mut taken, &mut relabel, 0, h, &mut best);
    }
    let edges = best.expect("at least one ordering exists");

    let mut bytes = vec![b'H', h.n() as u8, h.r().len() as u8];
    bytes.extend(h.r().iter().map(|&c| c as u8));
    bytes.extend((edges.len() as u16).to_be_bytes());
    for e in &edges {
        bytes.push(e.len() as u8);
        bytes.extend(e.iter().map(|&v| v as u8));
    }
    let canonical = Hypergraph::new(h.n(), h.r().iter().copied(), edges)?;
    Ok((canonical, CanonicalForm(bytes)))
}

/// All isomorphism classes of graphs on exactly `n` labeled vertices,
/// as canonical representatives sorted by canonical form.
///
/// Built by extending the (n−1)-vertex classes with every possible
/// neighborhood of a new vertex and deduplicating canonically.
pub fn all_graphs_up_to_iso(n: usize) -> Result<Vec<Graph>, Error> {
    check_cap("all_graphs_up_to_iso", n)?;
    if n == 0 {
        return Ok(vec![Graph::empty(0)]);
    }
    let mut reps = vec![Graph::empty(1)];
    for m in 2..=n {
        let mut seen: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
        for g in &reps {
            for mask in 0u64..(1 << (m - 1)) {
                let mut extended = Graph::empty(m);
                for (u, v) in g.edges() {
                    extended.add_edge(u, v);
                }
                for b in 0..m - 1 {
                    if mask >> b & 1 == 1 {
                        extended.add_edge(m - 1, b);
                    }
                }
                let (canonical, form) = canonical_graph(&extended)?;
                seen.entry(form).or_insert(canonical);
            }
        }
        reps = seen.into_values().collect();
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelings_share_a_form() {
        let c5 = Graph::cycle(5);
        let perm = vec![3, 1, 4, 0, 2];
        let relabeled = c5.relabel(&perm);
        assert_eq!(
            canonical_form_graph(&c5).unwrap(),
            canonical_form_graph(&relabeled).unwrap()
        );
        assert_ne!(
            canonical_form_graph(&c5).unwrap(),
            canonical_form_graph(&Graph::path(5)).unwrap()
        );
    }

    #[test]
    fn four_vertex_graphs_have_eleven_classes() {
        let mut forms = std::collections::BTreeSet::new();
        for mask in 0u64..64 {
            let all_pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let edges: Vec<(usize, usize)> = all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(4, &edges).unwrap();
            forms.insert(canonical_form_graph(&g).unwrap());
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn class_counts_match_known_values() {
        let expected = [1usize, 2, 4, 11, 34, 156];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(all_graphs_up_to_iso(i + 1).unwrap().len(), want, "n={}", i + 1);
        }
    }

    #[test]
    fn hypergraph_forms_are_relabel_invariant() {
        let h = Hypergraph::new(5, [3, 4], [vec![0, 1, 2], vec![1, 2, 3, 4]]).unwrap();
        // relabel vertices 0..4 by a permutation
        let perm = [4usize, 2, 0, 3, 1];
        let relabeled = Hypergraph::new(
            5,
            [3, 4],
            h.edges()
                .iter()
                .map(|e| e.vertices().iter().map(|&v| perm[v]).collect::<Vec<_>>()),
        )
        .unwrap();
        assert_eq!(
            canonical_form_hypergraph(&h).unwrap(),
            canonical_form_hypergraph(&relabeled).unwrap()
        );
        // the edges meet in three vertices here but only two in `h`
        let other = Hypergraph::new(5, [3, 4], [vec![0, 1, 2], vec![0, 1, 2, 3]]).unwrap();
        assert_ne!(
            canonical_form_hypergraph(&h).unwrap(),
            canonical_form_hypergraph(&other).unwrap()
        );
    }

    #[test]
    fn caps_are_enforced() {
        assert!(canonical_form_graph(&Graph::empty(11)).is_err());
        assert!(all_graphs_up_to_iso(11).is_err());
        assert!(canonical_form_graph(&Graph::petersen()).is_ok());
    }
}
