use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex index a [`VertexSet`] can hold.
pub const MAX_VERTICES: usize = 128;

/// A set of vertices drawn from `1..=128`, stored as a bitmask.
///
/// Vertex `v` occupies bit `v - 1`. The same type doubles as the support of a
/// square-free monomial, so set operations are the monomial operations: union
/// is `lcm`, difference is division by the common part.
///
/// The ordering is graded lexicographic: smaller sets first, then sets of
/// equal size by their sorted element tuples.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u128 << (v - 1))
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    /// Builds a set, rejecting vertices outside `1..=n`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut s = VertexSet::EMPTY;
        for v in vertices {
            if v == 0 || v > n || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << (v - 1));
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u128 << (v - 1)))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u128 << (v - 1)))
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| MAX_VERTICES - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares the sorted element tuples lexicographically (a proper prefix
    /// sorts first).
    pub fn lex_cmp(self, other: Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let above = !(low | (low - 1));
        if self.0 & low != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.lex_cmp(*other))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for VertexSet {
    /// Panics on vertex 0 or vertices above [`MAX_VERTICES`]; use
    /// [`VertexSet::from_vertices`] for untrusted input.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(vs: [usize; N]) -> Self {
        vs.into_iter().collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        VertexSet::from_vertices(MAX_VERTICES, vs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_matches_tuple_order() {
        let sets: Vec<VertexSet> = vec![
            [1].into(),
            [1, 2].into(),
            [1, 4].into(),
            [2].into(),
            [2, 3].into(),
            [1, 2, 3].into(),
        ];
        for a in &sets {
            for b in &sets {
                assert_eq!(a.lex_cmp(*b), a.to_vec().cmp(&b.to_vec()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn graded_order_puts_smaller_sets_first() {
        let mut v: Vec<VertexSet> = vec![[1, 4].into(), [3].into(), [2].into()];
        v.sort();
        assert_eq!(v, vec![[2].into(), [3].into(), VertexSet::from([1, 4])]);
    }

    #[test]
    fn extremes() {
        let s = VertexSet::full(128);
        assert_eq!(s.len(), 128);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.last(), Some(128));
        assert!(VertexSet::from_vertices(3, [4]).is_err());
        assert!(VertexSet::from_vertices(3, [0]).is_err());
    }
}
