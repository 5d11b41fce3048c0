//! Splitting `J_t(G)` along a simplicial vertex `x`.
//!
//! Fix `x` and list the connected `(t-1)`-sets through it as
//! `A_x = [C_1, ..., C_k]`. Each `C_i` contributes the generators
//! `x_{C_i}·w` for the neighbours `w` in `B_{C_i}` that were not already
//! produced by an earlier `C_j`; `K_i` keeps the generators of `J_t(G)`
//! containing none of `C_1, ..., C_i`. The resulting chain
//!
//! ```text
//! J_t(G) = J_1 + K_1,   K_{i-1} = J_i + K_i,   K_k = J_t(G \ x)
//! ```
//!
//! together with the intersections `J_i ∩ K_i = x_{C_i}·L_i` and the colon
//! ideals `(L_i : w)` drive the inductive arguments for regularity and
//! projective dimension. Everything here is checked by exact ideal
//! arithmetic; no homology is involved.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{simplicial_vertices, Fixture, Graph};
use crate::ideal::{t_connected_ideal, Monomial, SquareFreeIdeal};
use crate::vertex_set::VertexSet;

/// The ordering of `A_{x_5}` used in the worked example on the Figure 1
/// graph (`t = 4`). It is not lexicographic, so it is stored verbatim.
pub const FIG1_REFERENCE_ORDER: [[usize; 3]; 9] = [
    [3, 4, 5],
    [3, 5, 6],
    [4, 5, 6],
    [2, 4, 5],
    [1, 4, 5],
    [2, 3, 5],
    [1, 3, 5],
    [5, 6, 7],
    [5, 6, 8],
];

/// [`FIG1_REFERENCE_ORDER`] as vertex sets, with the fixture, vertex and `t`
/// it belongs to.
pub fn fig1_reference_order() -> (Fixture, usize, usize, Vec<VertexSet>) {
    let order = FIG1_REFERENCE_ORDER
        .iter()
        .map(|c| VertexSet::from(*c))
        .collect();
    (Fixture::Fig1, 5, 4, order)
}

/// `A_x`: connected `(t-1)`-subsets containing `x`.
///
/// Without `order` the list is in lexicographic order of sorted tuples;
/// an explicit `order` must be a permutation of that list and is returned
/// as given.
pub fn a_x_list(
    g: &Graph,
    x: usize,
    t: usize,
    order: Option<&[VertexSet]>,
) -> Result<Vec<VertexSet>> {
    g.check_vertex(x)?;
    if t < 2 {
        return Err(Error::BlockSize { t, min: 2 });
    }
    let computed: Vec<VertexSet> = g
        .connected_subsets(t - 1)
        .into_iter()
        .filter(|c| c.contains(x))
        .collect();
    let Some(order) = order else {
        return Ok(computed);
    };
    let mut given = order.to_vec();
    given.sort();
    let mut expected = computed;
    expected.sort();
    if given.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::InvalidOrder("repeated set".into()));
    }
    if given != expected {
        let stray = given
            .iter()
            .find(|c| !expected.contains(c))
            .map(|c| format!("{c} is not a connected {}-set through {x}", t - 1))
            .unwrap_or_else(|| {
                let missing = expected.iter().find(|c| !given.contains(c)).unwrap();
                format!("{missing} is missing")
            });
        return Err(Error::InvalidOrder(stray));
    }
    Ok(order.to_vec())
}

/// `B_{C_i}` for each `C_i` of a validated ordering.
fn b_sets_unchecked(g: &Graph, order: &[VertexSet]) -> Vec<VertexSet> {
    let mut produced: Vec<VertexSet> = Vec::new();
    order
        .iter()
        .map(|&c| {
            let nbrs = g.neighborhood_unchecked(c, false);
            let b: VertexSet = nbrs
                .iter()
                .filter(|&w| !produced.contains(&c.with(w)))
                .collect();
            produced.extend(nbrs.iter().map(|w| c.with(w)));
            b
        })
        .collect()
}

/// `B_{C_1} = N(C_1)`, and for `i >= 2` the neighbours `w` of `C_i` with
/// `C_i ∪ {w}` not of the form `C_j ∪ {w'}` for an earlier `j`.
pub fn b_sets(g: &Graph, x: usize, t: usize, order: &[VertexSet]) -> Result<Vec<VertexSet>> {
    a_x_list(g, x, t, Some(order))?;
    Ok(b_sets_unchecked(g, order))
}

/// The colon decomposition attached to one `w ∈ B_{C_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonParts {
    pub w: usize,
    /// Variables of `N(C_i) \ {w}`.
    pub m: SquareFreeIdeal,
    /// Variables of `N(w) \ N[C_i]`.
    pub n: SquareFreeIdeal,
    /// `J_t` of the graph with `N[C_i] ∪ N[w]` deleted.
    pub q: SquareFreeIdeal,
}

/// Ideals attached to one `C_i`. `j` and `l` are absent when `B_{C_i}` is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub i: usize,
    pub c: VertexSet,
    pub b: VertexSet,
    pub j: Option<SquareFreeIdeal>,
    pub k: SquareFreeIdeal,
    pub l: Option<SquareFreeIdeal>,
    pub colon: Vec<ColonParts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionLedger {
    pub x: usize,
    pub t: usize,
    pub order: Vec<VertexSet>,
    /// `J_t(G)`, which plays the role of `K_0`.
    pub whole: SquareFreeIdeal,
    /// Indexed from 1 in `entry.i`; `entries[i - 1]` belongs to `C_i`.
    pub entries: Vec<LedgerEntry>,
}

impl DecompositionLedger {
    /// `K_i`, with `K_0 = J_t(G)`.
    pub fn k(&self, i: usize) -> &SquareFreeIdeal {
        if i == 0 {
            &self.whole
        } else {
            &self.entries[i - 1].k
        }
    }
}

/// Builds every ideal of the decomposition by its defining formula.
///
/// `x` must be simplicial. With `order = None` the lexicographic ordering
/// of `A_x` is used.
pub fn ledger(
    g: &Graph,
    x: usize,
    t: usize,
    order: Option<&[VertexSet]>,
) -> Result<DecompositionLedger> {
    let order = a_x_list(g, x, t, order)?;
    if !simplicial_vertices(g).contains(&x) {
        return Err(Error::NotSimplicial(x));
    }
    let n = g.n();
    let whole = t_connected_ideal(g, t)?;
    let b = b_sets_unchecked(g, &order);
    let entries = (0..order.len())
        .into_par_iter()
        .map(|idx| {
            let c = order[idx];
            let k_gens = whole
                .gens()
                .iter()
                .copied()
                .filter(|e| !order[..=idx].iter().any(|cj| cj.is_subset(*e)));
            let k = SquareFreeIdeal::from_supports(n, k_gens)?;
            let (j, l, colon) = if b[idx].is_empty() {
                (None, None, Vec::new())
            } else {
                let j = SquareFreeIdeal::from_supports(n, b[idx].iter().map(|w| c.with(w)))?;
                let lcms = j.gens().iter().flat_map(|&m| {
                    k.gens()
                        .iter()
                        .map(move |&m2| m.union(m2).difference(c))
                });
                let l = SquareFreeIdeal::from_supports(n, lcms)?;
                let colon = b[idx]
                    .iter()
                    .map(|w| colon_parts(g, t, c, w))
                    .collect::<Result<Vec<_>>>()?;
                (Some(j), Some(l), colon)
            };
            Ok(LedgerEntry {
                i: idx + 1,
                c,
                b: b[idx],
                j,
                k,
                l,
                colon,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionLedger {
        x,
        t,
        order,
        whole,
        entries,
    })
}

fn colon_parts(g: &Graph, t: usize, c: VertexSet, w: usize) -> Result<ColonParts> {
    let n = g.n();
    let nc = g.neighborhood_unchecked(c, false);
    let closed_c = nc.union(c);
    let closed_w = g.neighbors(w).with(w);
    let q_gens = g.isolate(closed_c.union(closed_w)).connected_subsets(t);
    Ok(ColonParts {
        w,
        m: SquareFreeIdeal::variables(n, nc.without(w)),
        n: SquareFreeIdeal::variables(n, g.neighbors(w).difference(closed_c)),
        q: SquareFreeIdeal::from_supports(n, q_gens)?,
    })
}

/// Which identity a record checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `J_i + K_i = K_{i-1}`.
    Sum,
    /// `J_i ∩ K_i = x_{C_i}·L_i`.
    Intersection,
    /// `(L_i : w) = M_i + N_i + Q_i`.
    Colon,
    /// `K_i = K_{i-1}` when `B_{C_i}` is empty.
    Unchanged,
    /// `J_i ∩ K_i` as quadrics in `N(C_i)` times `x_{C_i}`, for
    /// `N[C_i] = V(G)`.
    DominatingIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub lemma: Identity,
    pub i: usize,
    pub w: Option<usize>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedIndex {
    pub lemma: Identity,
    pub i: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub records: Vec<IdentityRecord>,
    pub skipped: Vec<SkippedIndex>,
}

impl DecompositionReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Compares two ideals. On mismatch the detail names a generator of each
/// side that the other side does not contain.
fn compare(lhs: &SquareFreeIdeal, rhs: &SquareFreeIdeal) -> (bool, String) {
    if lhs == rhs {
        return (true, format!("{} generators agree", lhs.len()));
    }
    let mut parts = Vec::new();
    if let Some(m) = lhs.monomials().find(|&m| !rhs.contains(m)) {
        parts.push(format!("{m} on the left is not on the right"));
    }
    if let Some(m) = rhs.monomials().find(|&m| !lhs.contains(m)) {
        parts.push(format!("{m} on the right is not on the left"));
    }
    (false, parts.join("; "))
}

fn record(lemma: Identity, i: usize, w: Option<usize>, lhs: &SquareFreeIdeal, rhs: &SquareFreeIdeal) -> IdentityRecord {
    let (pass, detail) = compare(lhs, rhs);
    IdentityRecord {
        lemma,
        i,
        w,
        pass,
        detail,
    }
}

/// Checks the sum, intersection and colon identities at every index, or
/// `K_i = K_{i-1}` where `B_{C_i}` is empty. Records are sorted by `i`
/// then `w`.
pub fn verify_ledger(ledger: &DecompositionLedger) -> Result<DecompositionReport> {
    let mut report = DecompositionReport::default();
    for e in &ledger.entries {
        let prev = ledger.k(e.i - 1);
        let (Some(j), Some(l)) = (&e.j, &e.l) else {
            report
                .records
                .push(record(Identity::Unchanged, e.i, None, &e.k, prev));
            continue;
        };
        report
            .records
            .push(record(Identity::Sum, e.i, None, &j.add(&e.k)?, prev));
        report.records.push(record(
            Identity::Intersection,
            e.i,
            None,
            &j.intersect(&e.k)?,
            &l.multiply(Monomial::new(e.c))?,
        ));
        for p in &e.colon {
            let lhs = l.colon(Monomial::var(p.w))?;
            let rhs = p.m.add(&p.n)?.add(&p.q)?;
            report
                .records
                .push(record(Identity::Colon, e.i, Some(p.w), &lhs, &rhs));
        }
    }
    Ok(report)
}

/// Builds the ledger and checks its identities.
pub fn verify_decomposition(
    g: &Graph,
    x: usize,
    t: usize,
    order: Option<&[VertexSet]>,
) -> Result<DecompositionReport> {
    verify_ledger(&ledger(g, x, t, order)?)
}

/// For each `i` with `N[C_i] = V(G)` and `B_{C_i}` nonempty, checks
///
/// ```text
/// J_i ∩ K_i = x_{C_i}·( ⟨w w' : w, w' ∈ B, w ≠ w'⟩ + ⟨w w' : w ∈ B, w' ∈ N(C_i) \ B⟩ )
/// ```
///
/// Other indices are reported as skipped.
pub fn verify_dominating_intersection(
    g: &Graph,
    x: usize,
    t: usize,
    order: Option<&[VertexSet]>,
) -> Result<DecompositionReport> {
    let ledger = ledger(g, x, t, order)?;
    let mut report = DecompositionReport::default();
    for e in &ledger.entries {
        let closed = g.neighborhood_unchecked(e.c, true);
        if closed != g.vertices() {
            report.skipped.push(SkippedIndex {
                lemma: Identity::DominatingIntersection,
                i: e.i,
                reason: format!("N[C_{}] has {} of {} vertices", e.i, closed.len(), g.n()),
            });
            continue;
        }
        let Some(j) = &e.j else {
            report.skipped.push(SkippedIndex {
                lemma: Identity::DominatingIntersection,
                i: e.i,
                reason: format!("B_{} is empty", e.i),
            });
            continue;
        };
        let outside = g.neighborhood_unchecked(e.c, false).difference(e.b);
        let mut pairs = Vec::new();
        for w in e.b {
            for w2 in e.b.union(outside) {
                if w2 != w {
                    pairs.push(e.c.with(w).with(w2));
                }
            }
        }
        let rhs = SquareFreeIdeal::from_supports(g.n(), pairs)?;
        report.records.push(record(
            Identity::DominatingIntersection,
            e.i,
            None,
            &j.intersect(&e.k)?,
            &rhs,
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixture, random_chordal};

    fn set<const N: usize>(vs: [usize; N]) -> VertexSet {
        vs.into()
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> SquareFreeIdeal {
        SquareFreeIdeal::from_supports(n, gens.iter().map(|g| g.iter().copied().collect())).unwrap()
    }

    #[test]
    fn a_x_examples() {
        let (fx, x, t, order) = fig1_reference_order();
        let g = fixture(fx).unwrap();
        let mut lex = a_x_list(&g, x, t, None).unwrap();
        assert_eq!(lex.len(), 9);
        lex.sort();
        let mut given = order.clone();
        given.sort();
        assert_eq!(lex, given);
        assert_eq!(a_x_list(&g, x, t, Some(&order)).unwrap(), order);

        let p4 = fixture(Fixture::Path(4)).unwrap();
        assert_eq!(a_x_list(&p4, 1, 3, None).unwrap(), vec![set([1, 2])]);
        for x in 1..=4 {
            assert_eq!(a_x_list(&p4, x, 2, None).unwrap(), vec![VertexSet::singleton(x)]);
        }
    }

    #[test]
    fn explicit_order_must_be_a_permutation() {
        let (fx, x, t, order) = fig1_reference_order();
        let g = fixture(fx).unwrap();
        let short = &order[..8];
        assert!(matches!(a_x_list(&g, x, t, Some(short)), Err(Error::InvalidOrder(_))));
        let mut dup = order.clone();
        dup[8] = dup[0];
        assert!(matches!(a_x_list(&g, x, t, Some(&dup)), Err(Error::InvalidOrder(_))));
        let mut alien = order.clone();
        alien[8] = set([5, 9, 10]);
        assert!(matches!(b_sets(&g, x, t, &alien), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn fig1_reference_replay() {
        let (fx, x, t, order) = fig1_reference_order();
        let g = fixture(fx).unwrap();
        let b = b_sets(&g, x, t, &order).unwrap();
        assert_eq!(b[0], set([1, 2, 6]));
        assert_eq!(b[1], set([1, 2, 7, 8]));

        let led = ledger(&g, x, t, Some(&order)).unwrap();
        assert_eq!(
            led.entries[0].j.as_ref().unwrap(),
            &ideal(14, &[&[1, 3, 4, 5], &[2, 3, 4, 5], &[3, 4, 5, 6]])
        );
        assert_eq!(
            led.entries[1].j.as_ref().unwrap(),
            &ideal(14, &[&[1, 3, 5, 6], &[2, 3, 5, 6], &[3, 5, 6, 7], &[3, 5, 6, 8]])
        );
        let without_x = t_connected_ideal(&g.isolate(VertexSet::singleton(x)), t).unwrap();
        assert_eq!(&led.entries[8].k, &without_x);

        let report = verify_ledger(&led).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        let kinds: Vec<Identity> = report.records.iter().map(|r| r.lemma).collect();
        assert!(kinds.contains(&Identity::Sum));
        assert!(kinds.contains(&Identity::Intersection));
        assert!(kinds.contains(&Identity::Colon));
    }

    #[test]
    fn default_order_reaches_the_same_ends() {
        let (fx, x, t, order) = fig1_reference_order();
        let g = fixture(fx).unwrap();
        let given = ledger(&g, x, t, Some(&order)).unwrap();
        let lex = ledger(&g, x, t, None).unwrap();
        assert_ne!(given.order, lex.order);
        assert_eq!(given.whole, lex.whole);
        assert_eq!(given.entries.last().unwrap().k, lex.entries.last().unwrap().k);
        let first = &lex.entries[0];
        assert_eq!(first.j.as_ref().unwrap().add(&first.k).unwrap(), lex.whole);
        assert!(verify_ledger(&lex).unwrap().all_pass());
    }

    #[test]
    fn path_example() {
        let p4 = fixture(Fixture::Path(4)).unwrap();
        let led = ledger(&p4, 1, 3, None).unwrap();
        assert_eq!(led.entries.len(), 1);
        let e = &led.entries[0];
        assert_eq!(e.b, set([3]));
        assert_eq!(e.j.as_ref().unwrap(), &ideal(4, &[&[1, 2, 3]]));
        assert_eq!(e.k, ideal(4, &[&[2, 3, 4]]));
        assert_eq!(e.l.as_ref().unwrap(), &ideal(4, &[&[3, 4]]));
        assert!(verify_ledger(&led).unwrap().all_pass());
    }

    #[test]
    fn needs_simplicial_vertex() {
        let p4 = fixture(Fixture::Path(4)).unwrap();
        assert_eq!(ledger(&p4, 2, 3, None), Err(Error::NotSimplicial(2)));
    }

    #[test]
    fn dominating_intersection_examples() {
        let k5 = fixture(Fixture::Complete(5)).unwrap();
        let r = verify_dominating_intersection(&k5, 1, 4, None).unwrap();
        assert!(r.all_pass());
        assert!(!r.records.is_empty());
        assert!(r.skipped.iter().all(|s| s.reason.contains("empty")));

        let (fx, x, t, order) = fig1_reference_order();
        let g = fixture(fx).unwrap();
        let r = verify_dominating_intersection(&g, x, t, Some(&order)).unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.skipped.len(), 9);

        let star = fixture(Fixture::CliqueStar { t: 3, r: 1 }).unwrap();
        let r = verify_dominating_intersection(&star, 2, 3, None).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.records.len() + r.skipped.len(), 2);
    }

    #[test]
    fn random_chordal_graphs_satisfy_every_identity() {
        for seed in 0..40u64 {
            let g = random_chordal(4 + (seed as usize % 7), seed, 4);
            for x in simplicial_vertices(&g) {
                for t in 2..=4 {
                    let r = verify_decomposition(&g, x, t, None).unwrap();
                    assert!(r.all_pass(), "seed {seed} x {x} t {t}: {:?}", r.failures().collect::<Vec<_>>());
                    let d = verify_dominating_intersection(&g, x, t, None).unwrap();
                    assert!(d.all_pass(), "seed {seed} x {x} t {t}");
                }
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let p4 = fixture(Fixture::Path(4)).unwrap();
        let r = verify_decomposition(&p4, 1, 3, None).unwrap();
        let v = serde_json::to_value(&r.records[2]).unwrap();
        assert_eq!(v["lemma"], "colon");
        assert_eq!(v["i"], 1);
        assert_eq!(v["w"], 3);
        assert_eq!(v["pass"], true);
    }
}
