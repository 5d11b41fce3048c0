//! Square-free monomial ideals and their minimal primes.
//!
//! A square-free monomial is identified with its support, so an ideal is an
//! antichain of vertex sets (its minimal generators). Every operation returns
//! the canonical form: inclusion-minimal supports sorted in graded
//! lexicographic order. Two ideals are equal exactly when their canonical
//! forms are.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A square-free monomial `x_C = ∏_{v ∈ C} x_v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(VertexSet);

impl Monomial {
    pub const ONE: Monomial = Monomial(VertexSet::EMPTY);

    pub fn new(support: VertexSet) -> Self {
        Monomial(support)
    }

    pub fn var(v: usize) -> Self {
        Monomial(VertexSet::singleton(v))
    }

    pub fn support(self) -> VertexSet {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.len()
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial(self.0.union(other.0))
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.0.is_subset(other.0)
    }
}

impl From<VertexSet> for Monomial {
    fn from(s: VertexSet) -> Self {
        Monomial(s)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for v in self.0 {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A square-free monomial ideal in `K[x_1, ..., x_n]`, stored by its minimal
/// generating set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealJson")]
pub struct SquareFreeIdeal {
    n: usize,
    gens: Vec<VertexSet>,
}

#[derive(Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Vec<usize>>,
}

impl TryFrom<IdealJson> for SquareFreeIdeal {
    type Error = Error;

    fn try_from(j: IdealJson) -> Result<Self> {
        let gens = j
            .gens
            .into_iter()
            .map(|g| VertexSet::from_vertices(j.n, g))
            .collect::<Result<Vec<_>>>()?;
        SquareFreeIdeal::from_supports(j.n, gens)
    }
}

/// Minimal vertex covers of an ideal's generator hypergraph, with the
/// derived height data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverStats {
    pub height: usize,
    pub bight: usize,
    pub unmixed: bool,
    pub covers: Vec<VertexSet>,
}

fn minimal_antichain(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort();
    sets.dedup();
    // after the graded sort a set can only be divisible by an earlier one
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

impl SquareFreeIdeal {
    /// The zero ideal of `K[x_1..x_n]`.
    pub fn zero(n: usize) -> Self {
        SquareFreeIdeal { n, gens: Vec::new() }
    }

    /// The ideal generated by the variables in `vars`.
    pub fn variables(n: usize, vars: VertexSet) -> Self {
        SquareFreeIdeal {
            n,
            gens: vars.iter().map(VertexSet::singleton).collect(),
        }
    }

    /// Canonicalizes an arbitrary list of supports.
    pub fn from_supports<I: IntoIterator<Item = VertexSet>>(n: usize, gens: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let full = VertexSet::full(n);
        let gens: Vec<VertexSet> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| !g.is_subset(full)) {
            let vertex = bad.difference(full).first().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        Ok(SquareFreeIdeal {
            n,
            gens: minimal_antichain(gens),
        })
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(n: usize, gens: I) -> Result<Self> {
        Self::from_supports(n, gens.into_iter().map(Monomial::support))
    }

    fn from_supports_unchecked(n: usize, gens: Vec<VertexSet>) -> Self {
        SquareFreeIdeal {
            n,
            gens: minimal_antichain(gens),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal generator supports in canonical order.
    pub fn gens(&self) -> &[VertexSet] {
        &self.gens
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.gens.iter().copied().map(Monomial)
    }

    // `is_zero` plays the role of `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether the ideal is the whole ring (generated by `1`).
    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_empty())
    }

    /// Variables appearing in some minimal generator.
    pub fn support(&self) -> VertexSet {
        self.gens.iter().fold(VertexSet::EMPTY, |a, &g| a.union(g))
    }

    /// Distinct generator degrees, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.gens.iter().map(|g| g.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.is_subset(m.support()))
    }

    fn check_ambient(&self, other: &SquareFreeIdeal) -> Result<()> {
        if self.n != other.n {
            Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_monomial(&self, m: Monomial) -> Result<()> {
        match m.support().last() {
            Some(v) if v > self.n => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    /// `I + J`.
    pub fn add(&self, other: &SquareFreeIdeal) -> Result<SquareFreeIdeal> {
        self.check_ambient(other)?;
        let all = self.gens.iter().chain(&other.gens).copied().collect();
        Ok(Self::from_supports_unchecked(self.n, all))
    }

    /// `I ∩ J`, generated by the pairwise lcms.
    pub fn intersect(&self, other: &SquareFreeIdeal) -> Result<SquareFreeIdeal> {
        self.check_ambient(other)?;
        let lcms = self
            .gens
            .iter()
            .flat_map(|&a| other.gens.iter().map(move |&b| a.union(b)))
            .collect();
        Ok(Self::from_supports_unchecked(self.n, lcms))
    }

    /// Intersection of several ideals, folded left to right.
    pub fn intersect_all<'a, I>(n: usize, ideals: I) -> Result<SquareFreeIdeal>
    where
        I: IntoIterator<Item = &'a SquareFreeIdeal>,
    {
        let mut it = ideals.into_iter();
        let Some(first) = it.next() else {
            // empty intersection is the whole ring
            return Ok(SquareFreeIdeal {
                n,
                gens: vec![VertexSet::EMPTY],
            });
        };
        it.try_fold(first.clone(), |acc, next| acc.intersect(next))
    }

    /// `(I : m)` for a square-free monomial `m`.
    pub fn colon(&self, m: Monomial) -> Result<SquareFreeIdeal> {
        self.check_monomial(m)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.difference(m.support()))
            .collect();
        Ok(Self::from_supports_unchecked(self.n, gens))
    }

    /// `m · I`.
    pub fn multiply(&self, m: Monomial) -> Result<SquareFreeIdeal> {
        self.check_monomial(m)?;
        let gens = self.gens.iter().map(|g| g.union(m.support())).collect();
        Ok(Self::from_supports_unchecked(self.n, gens))
    }

    /// Minimal vertex covers (minimal transversals) of the generator
    /// hypergraph, i.e. the generating sets of the minimal primes.
    ///
    /// Computed by Berge's incremental method: covers of the first `k`
    /// generators are extended to the `k+1`-st and reduced to the minimal
    /// ones after every step. The zero ideal has no minimal primes here; the
    /// unit ideal has none either.
    pub fn minimal_primes(&self) -> Vec<VertexSet> {
        if self.is_zero() || self.is_unit() {
            return Vec::new();
        }
        let mut covers = vec![VertexSet::EMPTY];
        for &edge in &self.gens {
            let (mut hit, miss): (Vec<_>, Vec<_>) =
                covers.into_iter().partition(|c| !c.is_disjoint(edge));
            let hit_len = hit.len();
            let mut fresh = Vec::new();
            for c in miss {
                for v in edge {
                    let cand = c.with(v);
                    // only covers that already hit `edge` can be strictly
                    // smaller than a new candidate
                    if !hit[..hit_len].iter().any(|h| h.is_subset(cand)) {
                        fresh.push(cand);
                    }
                }
            }
            fresh.sort();
            fresh.dedup();
            // fresh candidates differ from their source by one vertex of
            // `edge`; one can still contain another
            let mut kept: Vec<VertexSet> = Vec::with_capacity(fresh.len());
            for c in fresh {
                if !kept.iter().any(|k| k.is_subset(c)) {
                    kept.push(c);
                }
            }
            hit.extend(kept);
            covers = hit;
        }
        covers.sort();
        covers
    }

    /// Height, big height and unmixedness. The zero ideal reports
    /// `0, 0, true` with no covers.
    pub fn cover_stats(&self) -> CoverStats {
        let covers = self.minimal_primes();
        let height = covers.iter().map(|c| c.len()).min().unwrap_or(0);
        let bight = covers.iter().map(|c| c.len()).max().unwrap_or(0);
        CoverStats {
            height,
            bight,
            unmixed: height == bight,
            covers,
        }
    }

    /// Moves the ideal into a ring with `n` variables (`n >= ` highest used
    /// variable).
    pub fn with_ambient(&self, n: usize) -> Result<SquareFreeIdeal> {
        Self::from_supports(n, self.gens.iter().copied())
    }

    /// Renames variable `v` to `v + offset` and widens the ring to `n`.
    pub fn shifted(&self, offset: usize, n: usize) -> Result<SquareFreeIdeal> {
        Self::from_supports(
            n,
            self.gens
                .iter()
                .map(|g| g.iter().map(|v| v + offset).collect::<VertexSet>()),
        )
    }

    /// `{"n": .., "gens": [[..], ..]}` with sorted supports.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal serializes")
    }
}

impl fmt::Debug for SquareFreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {} vars", self.n)
    }
}

impl fmt::Display for SquareFreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "<0>");
        }
        write!(f, "<")?;
        for (k, g) in self.monomials().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// `J_t(G)`: generated by `x_C` for every connected `t`-subset `C`.
pub fn t_connected_ideal(g: &Graph, t: usize) -> Result<SquareFreeIdeal> {
    if t < 2 {
        return Err(Error::BlockSize { t, min: 2 });
    }
    Ok(SquareFreeIdeal {
        n: g.n(),
        gens: g.connected_subsets(t),
    })
}

/// The `t`-clique ideal: generated by `x_C` for every `t`-clique `C`.
pub fn t_clique_ideal(g: &Graph, t: usize) -> Result<SquareFreeIdeal> {
    if t < 2 {
        return Err(Error::BlockSize { t, min: 2 });
    }
    let mut out = Vec::new();
    fn grow(g: &Graph, clique: VertexSet, cands: VertexSet, t: usize, out: &mut Vec<VertexSet>) {
        if clique.len() == t {
            out.push(clique);
            return;
        }
        let mut rest = cands;
        while let Some(v) = rest.first() {
            rest.remove(v);
            grow(g, clique.with(v), rest.intersection(g.neighbors(v)), t, out);
        }
    }
    grow(g, VertexSet::EMPTY, g.vertices(), t, &mut out);
    Ok(SquareFreeIdeal::from_supports_unchecked(g.n(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixture, Fixture};

    fn ideal(n: usize, gens: &[&[usize]]) -> SquareFreeIdeal {
        SquareFreeIdeal::from_supports(n, gens.iter().map(|g| g.iter().copied().collect())).unwrap()
    }

    fn set<const N: usize>(vs: [usize; N]) -> VertexSet {
        vs.into()
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(3, &[&[1, 2], &[1, 2, 3]]).gens(), &[set([1, 2])]);
        assert!(ideal(3, &[]).is_zero());
        assert_eq!(ideal(3, &[&[1], &[2], &[1, 2]]).gens(), &[set([1]), set([2])]);
        assert!(SquareFreeIdeal::from_supports(2, [set([3])]).is_err());
        let i = ideal(4, &[&[2, 3, 4], &[1, 2], &[1, 2, 3]]);
        assert_eq!(SquareFreeIdeal::from_supports(4, i.gens().to_vec()).unwrap(), i);
    }

    #[test]
    fn add_examples() {
        let i = ideal(3, &[&[1, 2]]);
        assert_eq!(i.add(&SquareFreeIdeal::zero(3)).unwrap(), i);
        assert_eq!(i.add(&ideal(3, &[&[2, 3]])).unwrap(), ideal(3, &[&[1, 2], &[2, 3]]));
        assert!(matches!(
            i.add(&SquareFreeIdeal::zero(4)),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(
            ideal(4, &[&[1, 2, 3]]).intersect(&ideal(4, &[&[2, 3, 4]])).unwrap(),
            ideal(4, &[&[1, 2, 3, 4]])
        );
        let i = ideal(4, &[&[1, 2], &[3]]);
        let full = ideal(4, &[&[1, 2, 3, 4]]);
        assert_eq!(i.intersect(&full).unwrap(), full);
        assert!(i.intersect(&SquareFreeIdeal::zero(4)).unwrap().is_zero());
        assert!(i.intersect(&SquareFreeIdeal::zero(5)).is_err());
    }

    #[test]
    fn colon_examples() {
        let i = ideal(4, &[&[1, 2, 3], &[2, 3, 4]]);
        assert_eq!(i.colon(Monomial::var(2)).unwrap(), ideal(4, &[&[1, 3], &[3, 4]]));
        assert_eq!(i.colon(Monomial::ONE).unwrap(), i);
        assert!(i.colon(Monomial::var(5)).is_err());
        assert!(ideal(2, &[&[1]]).colon(Monomial::var(1)).unwrap().is_unit());
    }

    /// Minimal hitting sets by exhaustive search over all subsets.
    fn brute_covers(i: &SquareFreeIdeal) -> Vec<VertexSet> {
        let hits = |s: VertexSet| i.gens().iter().all(|g| !g.is_disjoint(s));
        let mut out: Vec<VertexSet> = (0u128..1 << i.n())
            .map(VertexSet::from_bits)
            .filter(|&s| hits(s) && s.iter().all(|v| !hits(s.without(v))))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn minimal_primes_examples() {
        let i = ideal(4, &[&[1, 2, 3], &[2, 3, 4]]);
        assert_eq!(brute_covers(&i), vec![set([2]), set([3]), set([1, 4])]);
        assert_eq!(i.minimal_primes(), brute_covers(&i));
        assert_eq!(ideal(1, &[&[1]]).minimal_primes(), vec![set([1])]);
        assert_eq!(ideal(2, &[&[1, 2]]).minimal_primes(), vec![set([1]), set([2])]);
        assert!(SquareFreeIdeal::zero(3).minimal_primes().is_empty());
    }

    #[test]
    fn cover_stats_examples() {
        let s = ideal(4, &[&[1, 2, 3], &[2, 3, 4]]).cover_stats();
        assert_eq!((s.height, s.bight, s.unmixed), (1, 2, false));
        let z = SquareFreeIdeal::zero(4).cover_stats();
        assert_eq!((z.height, z.bight, z.unmixed), (0, 0, true));

        let c5 = fixture(Fixture::Cycle(5)).unwrap();
        assert_eq!(t_connected_ideal(&c5, 3).unwrap().cover_stats().bight, 2);

        let fig1 = fixture(Fixture::Fig1).unwrap();
        let s = t_connected_ideal(&fig1, 4).unwrap().cover_stats();
        assert_eq!(s.bight, 8);
        assert!(s.covers.contains(&set([4, 5, 6, 7, 8, 12, 13, 14])));
    }

    #[test]
    fn t_connected_examples() {
        let p4 = fixture(Fixture::Path(4)).unwrap();
        assert_eq!(t_connected_ideal(&p4, 3).unwrap(), ideal(4, &[&[1, 2, 3], &[2, 3, 4]]));
        assert!(t_connected_ideal(&p4, 5).unwrap().is_zero());
        assert!(t_connected_ideal(&p4, 1).is_err());
        let small = crate::graph::Graph::from_edges(5, [(1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(t_connected_ideal(&small, 4).unwrap().is_zero());
        let k6 = fixture(Fixture::Complete(6)).unwrap();
        let k6e = fixture(Fixture::CompleteMinusEdge(6)).unwrap();
        for t in 3..=6 {
            assert_eq!(t_connected_ideal(&k6, t).unwrap(), t_connected_ideal(&k6e, t).unwrap());
        }
        assert_ne!(t_connected_ideal(&k6, 2).unwrap(), t_connected_ideal(&k6e, 2).unwrap());
    }

    #[test]
    fn t_clique_examples() {
        let star = fixture(Fixture::CliqueStar { t: 3, r: 2 }).unwrap();
        assert_eq!(
            t_clique_ideal(&star, 3).unwrap(),
            ideal(7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]])
        );
        let tree = crate::graph::Graph::from_edges(6, [(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        assert!(t_clique_ideal(&tree, 3).unwrap().is_zero());
        let fig1 = fixture(Fixture::Fig1).unwrap();
        assert_eq!(t_clique_ideal(&fig1, 2).unwrap(), t_connected_ideal(&fig1, 2).unwrap());
    }

    #[test]
    fn display_and_json() {
        let i = ideal(4, &[&[2, 3], &[1]]);
        assert_eq!(i.to_string(), "<x1, x2x3>");
        assert_eq!(i.to_json(), r#"{"n":4,"gens":[[1],[2,3]]}"#);
        let back: SquareFreeIdeal = serde_json::from_str(&i.to_json()).unwrap();
        assert_eq!(back, i);
    }
}
