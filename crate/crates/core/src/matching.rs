//! The `t`-induced matching number, computed two ways: on the graph side as a
//! maximum independent set of the conflict graph between connected
//! `t`-subsets, and on the hypergraph side as the induced matching number of
//! an arbitrary antichain of edges.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default refusal threshold for the number of connected `t`-subsets.
pub const DEFAULT_SUBSET_CAP: usize = 50_000;

/// A family of pairwise disjoint connected `t`-sets with no edge of `G`
/// between distinct members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TInducedMatching {
    pub t: usize,
    pub blocks: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuResult {
    pub value: usize,
    pub witness: TInducedMatching,
}

/// Checks block sizes, connectivity, disjointness and the absence of
/// edges between blocks.
pub fn is_t_induced_matching(g: &Graph, t: usize, blocks: &[VertexSet]) -> Result<bool> {
    for &b in blocks {
        g.check_set(b)?;
    }
    let mut used = VertexSet::EMPTY;
    for &b in blocks {
        if b.len() != t || !g.is_connected_unchecked(b) || !b.is_disjoint(used) {
            return Ok(false);
        }
        used = used.union(b);
    }
    Ok(blocks.iter().all(|&b| {
        g.neighborhood_unchecked(b, false)
            .intersection(used)
            .is_empty()
    }))
}

/// Dense symmetric adjacency over `0..m` stored as bit rows.
struct ConflictGraph {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl ConflictGraph {
    fn new(m: usize) -> Self {
        let words = m.div_ceil(64);
        ConflictGraph {
            words,
            rows: vec![vec![0; words]; m],
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.rows[a][b / 64] |= 1 << (b % 64);
        self.rows[b][a / 64] |= 1 << (a % 64);
    }

    fn degree(&self, a: usize) -> usize {
        self.rows[a].iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn bits_iter(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + b)
        })
    })
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
}

/// Exact maximum independent set by branch and bound.
///
/// Nodes are renumbered in descending conflict degree (ties by original
/// index) and always branched on the first remaining one. The bound is the
/// size of a greedy clique cover of the remaining candidates. `accept`
/// vets each tentative extension of the current set; it must be hereditary.
struct MaxIndependent<'a, F> {
    graph: &'a ConflictGraph,
    accept: F,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl<'a, F: FnMut(&[usize], usize) -> bool> MaxIndependent<'a, F> {
    fn solve(graph: &'a ConflictGraph, accept: F) -> Vec<usize> {
        let m = graph.rows.len();
        let mut all = vec![0u64; graph.words];
        for i in 0..m {
            all[i / 64] |= 1 << (i % 64);
        }
        let mut search = MaxIndependent {
            graph,
            accept,
            best: Vec::new(),
            current: Vec::new(),
        };
        search.expand(all);
        search.best
    }

    fn clique_cover_bound(&self, cands: &[u64]) -> usize {
        let mut left = cands.to_vec();
        let mut cliques = 0;
        while let Some(v) = first_bit(&left) {
            cliques += 1;
            left[v / 64] &= !(1 << (v % 64));
            // vertices still joinable to the clique being grown
            let mut joinable: Vec<u64> = left
                .iter()
                .zip(&self.graph.rows[v])
                .map(|(a, b)| a & b)
                .collect();
            while let Some(u) = first_bit(&joinable) {
                left[u / 64] &= !(1 << (u % 64));
                for (j, r) in joinable.iter_mut().zip(&self.graph.rows[u]) {
                    *j &= r;
                }
                joinable[u / 64] &= !(1 << (u % 64));
            }
        }
        cliques
    }

    fn expand(&mut self, mut cands: Vec<u64>) {
        loop {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            let Some(v) = first_bit(&cands) else {
                return;
            };
            if self.current.len() + self.clique_cover_bound(&cands) <= self.best.len() {
                return;
            }
            cands[v / 64] &= !(1 << (v % 64));
            if (self.accept)(&self.current, v) {
                let next: Vec<u64> = cands
                    .iter()
                    .zip(&self.graph.rows[v])
                    .map(|(a, b)| a & !b)
                    .collect();
                self.current.push(v);
                self.expand(next);
                self.current.pop();
            }
        }
    }
}

/// Sorts nodes by descending degree and returns the permutation
/// `order[new] = old` together with the relabelled conflict graph.
fn reorder(graph: &ConflictGraph) -> (Vec<usize>, ConflictGraph) {
    let m = graph.rows.len();
    let mut order: Vec<usize> = (0..m).collect();
    let degrees: Vec<usize> = (0..m).map(|i| graph.degree(i)).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    let mut pos = vec![0; m];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let mut out = ConflictGraph::new(m);
    for (old, row) in graph.rows.iter().enumerate() {
        for other in bits_iter(row) {
            if old < other {
                out.link(pos[old], pos[other]);
            }
        }
    }
    (order, out)
}

/// `ν_t(G)` with a witnessing family, refusing when `G` has more than
/// [`DEFAULT_SUBSET_CAP`] connected `t`-subsets.
pub fn nu_t(g: &Graph, t: usize) -> Result<NuResult> {
    nu_t_with_cap(g, t, DEFAULT_SUBSET_CAP)
}

/// `ν_t(G)` as a maximum independent set in the conflict graph on connected
/// `t`-subsets (two subsets conflict when they meet or an edge of `G` joins
/// them).
pub fn nu_t_with_cap(g: &Graph, t: usize, cap: usize) -> Result<NuResult> {
    if t < 2 {
        return Err(Error::BlockSize { t, min: 2 });
    }
    let subsets = g.connected_subsets(t);
    if subsets.len() > cap {
        return Err(Error::TooManySubsets {
            count: subsets.len(),
            t,
            cap,
        });
    }
    let closed: Vec<VertexSet> = subsets
        .iter()
        .map(|&c| g.neighborhood_unchecked(c, true))
        .collect();
    let mut conflicts = ConflictGraph::new(subsets.len());
    for (a, na) in closed.iter().enumerate() {
        for (b, &cb) in subsets.iter().enumerate().skip(a + 1) {
            if !na.is_disjoint(cb) {
                conflicts.link(a, b);
            }
        }
    }
    let (order, sorted) = reorder(&conflicts);
    let chosen = MaxIndependent::solve(&sorted, |_, _| true);
    let mut blocks: Vec<VertexSet> = chosen.into_iter().map(|i| subsets[order[i]]).collect();
    blocks.sort_by(|a, b| a.lex_cmp(*b));
    Ok(NuResult {
        value: blocks.len(),
        witness: TInducedMatching { t, blocks },
    })
}

/// Induced matching number of the hypergraph with the given edges: the
/// largest set `D` of pairwise disjoint edges such that no other edge lies
/// inside `∪D`.
pub fn hypergraph_induced_matching_number(edges: &[VertexSet], n: usize) -> usize {
    hypergraph_induced_matching(edges, n).len()
}

/// A maximum induced matching of the hypergraph, sorted lexicographically.
pub fn hypergraph_induced_matching(edges: &[VertexSet], _n: usize) -> Vec<VertexSet> {
    let m = edges.len();
    // pairwise conflicts are necessary but not sufficient: three or more
    // chosen edges can jointly contain another edge, which `accept` catches
    let mut conflicts = ConflictGraph::new(m);
    for a in 0..m {
        for b in a + 1..m {
            let union = edges[a].union(edges[b]);
            let spoiled = !edges[a].is_disjoint(edges[b])
                || edges
                    .iter()
                    .enumerate()
                    .any(|(k, e)| k != a && k != b && e.is_subset(union));
            if spoiled {
                conflicts.link(a, b);
            }
        }
    }
    let (order, sorted) = reorder(&conflicts);
    let chosen = MaxIndependent::solve(&sorted, |current, v| {
        let members: Vec<usize> = current
            .iter()
            .map(|&i| order[i])
            .chain([order[v]])
            .collect();
        let union = members
            .iter()
            .fold(VertexSet::EMPTY, |acc, &i| acc.union(edges[i]));
        edges
            .iter()
            .enumerate()
            .all(|(k, e)| members.contains(&k) || !e.is_subset(union))
    });
    let mut out: Vec<VertexSet> = chosen.into_iter().map(|i| edges[order[i]]).collect();
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixture, Fixture};
    use crate::ideal::t_clique_ideal;

    fn set<const N: usize>(vs: [usize; N]) -> VertexSet {
        vs.into()
    }

    #[test]
    fn predicate_examples() {
        let fig1 = fixture(Fixture::Fig1).unwrap();
        // {1,2} and {7,9} are both edges, far apart: a valid 2-induced matching
        assert!(is_t_induced_matching(&fig1, 2, &[set([1, 2]), set([7, 9])]).unwrap());
        // {1,2} and {5,6}: 5 is adjacent to 3 and 4 but not to 1 or 2
        assert!(is_t_induced_matching(&fig1, 2, &[set([1, 2]), set([5, 6])]).unwrap());
        assert!(!is_t_induced_matching(&fig1, 2, &[set([1, 2]), set([3, 5])]).unwrap());
        assert!(is_t_induced_matching(&fig1, 2, &[]).unwrap());
        let p6 = fixture(Fixture::Path(6)).unwrap();
        assert!(!is_t_induced_matching(&p6, 3, &[set([1, 2, 3]), set([4, 5, 6])]).unwrap());
        assert!(!is_t_induced_matching(&p6, 2, &[set([1, 3])]).unwrap());
        assert!(!is_t_induced_matching(&p6, 2, &[set([1, 2]), set([2, 3])]).unwrap());
        assert!(is_t_induced_matching(&p6, 2, &[set([7, 8])]).is_err());
    }

    #[test]
    fn fig1_nu_table() {
        let fig1 = fixture(Fixture::Fig1).unwrap();
        let expected = [4, 3, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0];
        for (t, &want) in (2..=16).zip(expected.iter().chain([&0])) {
            let r = nu_t(&fig1, t).unwrap();
            assert_eq!(r.value, want, "t = {t}");
            assert!(is_t_induced_matching(&fig1, t, &r.witness.blocks).unwrap());
        }
    }

    #[test]
    fn small_examples() {
        let c5 = fixture(Fixture::Cycle(5)).unwrap();
        assert_eq!(nu_t(&c5, 3).unwrap().value, 1);
        let star = fixture(Fixture::CliqueStar { t: 3, r: 2 }).unwrap();
        assert_eq!(nu_t(&star, 3).unwrap().value, 1);
        let cliques = t_clique_ideal(&star, 3).unwrap();
        assert_eq!(hypergraph_induced_matching_number(cliques.gens(), 7), 1);
        assert!(nu_t(&c5, 1).is_err());
    }

    #[test]
    fn hypergraph_examples() {
        assert_eq!(hypergraph_induced_matching_number(&[set([1, 2, 3])], 3), 1);
        assert_eq!(hypergraph_induced_matching_number(&[set([1, 2]), set([3, 4])], 4), 2);
        assert_eq!(hypergraph_induced_matching_number(&[], 4), 0);
        // {1,2},{3,4} are pairwise fine but {2,3} sits inside their union
        assert_eq!(
            hypergraph_induced_matching_number(&[set([1, 2]), set([3, 4]), set([2, 3])], 4),
            1
        );
        // a triple of edges that is spoiled only jointly
        let edges = [set([1, 2]), set([3, 4]), set([5, 6]), set([2, 4, 6])];
        assert_eq!(hypergraph_induced_matching_number(&edges, 6), 2);
        let fig1 = fixture(Fixture::Fig1).unwrap();
        assert_eq!(hypergraph_induced_matching_number(&fig1.connected_subsets(4), 14), 2);
    }

    #[test]
    fn subset_cap_is_enforced() {
        let k8 = fixture(Fixture::Complete(8)).unwrap();
        assert!(matches!(
            nu_t_with_cap(&k8, 4, 10),
            Err(Error::TooManySubsets { count: 70, .. })
        ));
    }
}
