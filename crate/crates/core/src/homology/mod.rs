//! Graded Betti numbers of `R/I` for square-free `I`, by Hochster's formula:
//!
//! ```text
//! β_{i,j}(R/I) = Σ_{|W| = j} dim H̃_{j-i-1}(Δ[W]; K)      (i >= 1)
//! ```
//!
//! where `Δ` is the simplicial complex whose faces are the sets containing no
//! generator support of `I`. Reduced homology is computed from boundary
//! matrices by exact elimination over the chosen field. The whole module is
//! deliberately brute force: it shares no code with the combinatorial
//! formulas it is used to check.

pub mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::SquareFreeIdeal;
use crate::vertex_set::VertexSet;

/// Default largest number of variables accepted by [`betti_table_ideal`].
pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// The prime field with `p` elements.
    Prime(u32),
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);
    pub const GF3: FieldSpec = FieldSpec::Prime(3);

    pub fn prime(p: u32) -> Result<FieldSpec> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if is_prime {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::GF2
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `Q`, `rationals`, `gf2`, `GF(3)` and similar spellings.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" || lower == "rationals" || lower == "qq" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = lower
            .strip_prefix("gf")
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A simplicial complex restricted to a vertex set, faces grouped by
/// dimension: `faces[k + 1]` holds the faces of dimension `k`, starting
/// with the empty face at index 0. The void complex has no faces at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceComplex {
    pub ambient: VertexSet,
    pub faces: Vec<Vec<VertexSet>>,
}

impl FaceComplex {
    pub fn void(ambient: VertexSet) -> Self {
        FaceComplex {
            ambient,
            faces: Vec::new(),
        }
    }

    /// Dimension of the largest face; `-1` for `{∅}`, `-2` when void.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.faces
            .get(face.len())
            .is_some_and(|fs| fs.contains(&face))
    }
}

/// `Δ[W]` for the Stanley-Reisner complex of `I`: subsets of `W` containing
/// no generator support.
pub fn restricted_complex(ideal: &SquareFreeIdeal, w: VertexSet) -> FaceComplex {
    let inside: Vec<VertexSet> = ideal
        .gens()
        .iter()
        .copied()
        .filter(|g| g.is_subset(w))
        .collect();
    let mut faces: Vec<Vec<VertexSet>> = vec![Vec::new(); w.len() + 1];
    let bits = w.bits();
    let mut sub = bits;
    loop {
        let face = VertexSet::from_bits(sub);
        if !inside.iter().any(|g| g.is_subset(face)) {
            faces[face.len()].push(face);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    while faces.last().is_some_and(Vec::is_empty) {
        faces.pop();
    }
    for level in &mut faces {
        level.sort();
    }
    FaceComplex { ambient: w, faces }
}

/// Euler-characteristic audit counts.
///
/// Each evaluated `Δ[W]` contributes one evaluation: its homology dimensions
/// must be non-negative with alternating sum `χ̃(Δ[W])` taken from the face
/// counts. Each Betti table contributes one more: for every `j`,
/// `Σ_i (-1)^i β_{i,j}` must equal the degree-`j` coefficient of
/// `Σ_{F ∈ Δ} t^|F| (1-t)^(m-|F|)`, computed from the f-vector alone.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EulerAudit {
    pub evaluations: u64,
    pub failures: u64,
}

impl EulerAudit {
    fn merge(self, other: EulerAudit) -> EulerAudit {
        EulerAudit {
            evaluations: self.evaluations + other.evaluations,
            failures: self.failures + other.failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Reduced homology dimensions of a complex given as face bitmasks by
/// level (`levels[k + 1]` = faces of dimension `k`). Returns
/// `dim H̃_k` for `k = -1 ..= dim`, plus whether the reduced Euler
/// characteristic audit passed.
fn homology_of_levels(levels: &[Vec<u128>], field: FieldSpec) -> (Vec<usize>, bool) {
    if levels.is_empty() {
        return (vec![0], true);
    }
    // ranks[k + 1] = rank of the boundary map out of dimension k
    let mut ranks = vec![0usize; levels.len() + 1];
    for k in 1..levels.len() {
        ranks[k] = boundary_rank(&levels[k], &levels[k - 1], field);
    }
    let mut dims = Vec::with_capacity(levels.len());
    let mut ok = true;
    for k in 0..levels.len() {
        let cycles = levels[k].len() as isize - ranks[k] as isize;
        let h = cycles - ranks[k + 1] as isize;
        if h < 0 {
            ok = false;
        }
        dims.push(h.max(0) as usize);
    }
    let sign = |k: usize| if k.is_multiple_of(2) { -1isize } else { 1 };
    let chi_faces: isize = levels
        .iter()
        .enumerate()
        .map(|(k, l)| sign(k) * l.len() as isize)
        .sum();
    let chi_homology: isize = dims
        .iter()
        .enumerate()
        .map(|(k, &h)| sign(k) * h as isize)
        .sum();
    (dims, ok && chi_faces == chi_homology)
}

/// Rank of the boundary map from `cols` (faces of one dimension) to `rows`
/// (faces one dimension lower), with the alternating sign convention.
fn boundary_rank(cols: &[u128], rows: &[u128], field: FieldSpec) -> usize {
    if cols.is_empty() || rows.is_empty() {
        return 0;
    }
    let index: HashMap<u128, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let entries = |face: u128| {
        let mut out = Vec::new();
        let mut rest = face;
        let mut pos = 0;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            out.push((index[&(face & !low)], if pos % 2 == 0 { 1i64 } else { -1 }));
            rest &= rest - 1;
            pos += 1;
        }
        out
    };
    // work with whichever orientation has fewer rows
    let transpose = cols.len() < rows.len();
    match field {
        FieldSpec::Prime(2) => {
            let (nrows, ncols) = if transpose {
                (cols.len(), rows.len())
            } else {
                (rows.len(), cols.len())
            };
            let words = ncols.div_ceil(64);
            let mut m = vec![vec![0u64; words]; nrows];
            for (c, &face) in cols.iter().enumerate() {
                for (r, _) in entries(face) {
                    let (i, j) = if transpose { (c, r) } else { (r, c) };
                    m[i][j / 64] |= 1 << (j % 64);
                }
            }
            linalg::rank_gf2(m)
        }
        FieldSpec::Prime(p) => {
            let p = p as u64;
            let m = dense(cols, rows.len(), transpose, &entries, |s| {
                if s > 0 {
                    1
                } else {
                    p - 1
                }
            });
            linalg::rank_mod_p(m, p)
        }
        FieldSpec::Rationals => {
            let m = dense(cols, rows.len(), transpose, &entries, |s| s);
            linalg::rank_rational(&m)
        }
    }
}

fn dense<T: Clone + Default>(
    cols: &[u128],
    nrows: usize,
    transpose: bool,
    entries: &dyn Fn(u128) -> Vec<(usize, i64)>,
    conv: impl Fn(i64) -> T,
) -> Vec<Vec<T>> {
    let (h, w) = if transpose {
        (cols.len(), nrows)
    } else {
        (nrows, cols.len())
    };
    let mut m = vec![vec![T::default(); w]; h];
    for (c, &face) in cols.iter().enumerate() {
        for (r, s) in entries(face) {
            let (i, j) = if transpose { (c, r) } else { (r, c) };
            m[i][j] = conv(s);
        }
    }
    m
}

/// `dim H̃_k(cx; K)` for `k = -1 ..= dim(cx)`. `{∅}` has `H̃_{-1} = K`; the
/// void complex has no homology.
pub fn reduced_homology_dims(cx: &FaceComplex, field: FieldSpec) -> Vec<usize> {
    let levels: Vec<Vec<u128>> = cx
        .faces
        .iter()
        .map(|l| l.iter().map(|f| f.bits()).collect())
        .collect();
    homology_of_levels(&levels, field).0
}

/// Graded Betti numbers `β_{i,j}(R/I)` over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub n: usize,
    pub field: FieldSpec,
    /// Nonzero entries keyed by `(i, j)`.
    pub entries: BTreeMap<(usize, usize), u64>,
    /// Euler-characteristic audit over every homology evaluation.
    pub audit: EulerAudit,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`.
    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// `max { i : β_{i,j} ≠ 0 }`.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `n - pd`, by Auslander-Buchsbaum.
    pub fn depth(&self) -> usize {
        self.n - self.pd()
    }

    /// Total Betti number in homological degree `i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|(&(a, _), _)| a == i)
            .map(|(_, &b)| b)
            .sum()
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: usize,
            beta: u64,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(&(i, j), &beta)| Entry { i, j, beta })
            .collect();
        let mut st = s.serialize_struct("BettiTable", 6)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("reg", &self.reg())?;
        st.serialize_field("pd", &self.pd())?;
        st.serialize_field("depth", &self.depth())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest ambient variable count accepted.
    pub cap: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// Betti table of `R/I` with the default variable cap.
pub fn betti_table_ideal(ideal: &SquareFreeIdeal, field: FieldSpec) -> Result<BettiTable> {
    betti_table_with(ideal, field, OracleOptions::default())
}

/// Betti table of `R/I` by Hochster's formula.
///
/// Only sets `W` that are unions of generator supports are evaluated: any
/// other `W` has a vertex lying in no minimal nonface of `Δ[W]`, which makes
/// `Δ[W]` a cone with vanishing reduced homology. `β_{0,0} = 1` is set
/// directly. Sets are evaluated in parallel and merged by summation, so the
/// table does not depend on scheduling.
pub fn betti_table_with(
    ideal: &SquareFreeIdeal,
    field: FieldSpec,
    opts: OracleOptions,
) -> Result<BettiTable> {
    if ideal.n() > opts.cap {
        return Err(Error::OracleCap {
            n: ideal.n(),
            cap: opts.cap,
        });
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let vars = ideal.support().to_vec();
    let m = vars.len();
    // compress generator supports onto bits 0..m of the support
    let compress = |s: VertexSet| -> u32 {
        vars.iter()
            .enumerate()
            .filter(|(_, &v)| s.contains(v))
            .fold(0u32, |acc, (k, _)| acc | 1 << k)
    };
    let gens: Vec<u32> = ideal.gens().iter().map(|&g| compress(g)).collect();
    let size = 1usize << m;
    let mut nonface = vec![false; size];
    let mut covered = vec![0u32; size];
    for &g in &gens {
        nonface[g as usize] = true;
    }
    for mask in 1..size {
        let mut low = mask & mask.wrapping_neg();
        let mut rest = mask;
        while rest != 0 {
            let smaller = mask & !low;
            if nonface[smaller] {
                nonface[mask] = true;
            }
            covered[mask] |= covered[smaller];
            rest &= rest - 1;
            low = rest & rest.wrapping_neg();
        }
        if gens.contains(&(mask as u32)) {
            covered[mask] |= mask as u32;
        }
    }
    let candidates: Vec<u32> = (1..size as u32)
        .filter(|&w| covered[w as usize] == w)
        .collect();

    let (entries, audit) = candidates
        .par_iter()
        .map(|&w| {
            let j = w.count_ones() as usize;
            let mut levels: Vec<Vec<u128>> = vec![Vec::new(); j + 1];
            let mut sub = w;
            loop {
                if !nonface[sub as usize] {
                    levels[sub.count_ones() as usize].push(sub as u128);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & w;
            }
            while levels.last().is_some_and(Vec::is_empty) {
                levels.pop();
            }
            for l in &mut levels {
                l.sort_unstable();
            }
            let (dims, ok) = homology_of_levels(&levels, field);
            let mut local = BTreeMap::new();
            // dims[k + 1] = dim H̃_k contributes to β_{j-k-1, j}
            for (idx, &h) in dims.iter().enumerate() {
                let k = idx as isize - 1;
                let i = j as isize - k - 1;
                if h > 0 && i >= 1 {
                    *local.entry((i as usize, j)).or_insert(0u64) += h as u64;
                }
            }
            let audit = EulerAudit {
                evaluations: 1,
                failures: u64::from(!ok),
            };
            (local, audit)
        })
        .reduce(
            || (BTreeMap::new(), EulerAudit::default()),
            |(mut a, audit_a), (b, audit_b)| {
                for (key, v) in b {
                    *a.entry(key).or_insert(0) += v;
                }
                (a, audit_a.merge(audit_b))
            },
        );
    let mut entries = entries;
    entries.insert((0, 0), 1);
    let series_ok = hilbert_numerator_matches(&entries, &nonface, m);
    let audit = audit.merge(EulerAudit {
        evaluations: 1,
        failures: u64::from(!series_ok),
    });
    Ok(BettiTable {
        n: ideal.n(),
        field,
        entries,
        audit,
    })
}

/// Compares `Σ_i (-1)^i β_{i,j}` with the Hilbert series numerator of the
/// complex on `m` variables whose nonfaces are flagged in `nonface`.
fn hilbert_numerator_matches(
    entries: &BTreeMap<(usize, usize), u64>,
    nonface: &[bool],
    m: usize,
) -> bool {
    let mut f = vec![0i64; m + 1];
    for (mask, &bad) in nonface.iter().enumerate() {
        if !bad {
            f[mask.count_ones() as usize] += 1;
        }
    }
    let mut binom = vec![vec![0i64; m + 1]; m + 1];
    for a in 0..=m {
        binom[a][0] = 1;
        for b in 1..=a {
            binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
        }
    }
    let mut lhs = vec![0i64; m + 1];
    for (&(i, j), &beta) in entries {
        if j > m {
            return false;
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        lhs[j] += sign * beta as i64;
    }
    (0..=m).all(|j| {
        let rhs: i64 = (0..=j)
            .map(|k| {
                let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                sign * f[k] * binom[m - k][j - k]
            })
            .sum();
        lhs[j] == rhs
    })
}

/// Invariants read off a Betti table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologicalInvariants {
    pub reg: usize,
    pub pd: usize,
    pub depth: usize,
    pub is_cm: bool,
    /// `None` when the generators have mixed degrees or the ideal is zero.
    pub has_linear_resolution: Option<bool>,
    /// Common generator degree, when there is one.
    pub gen_degree: Option<usize>,
}

/// `reg`, `pd`, `depth`, Cohen-Macaulayness (`pd = ht`) and linearity of the
/// resolution. Generator degrees are read from the `β_{1,j}` row.
pub fn homological_invariants(b: &BettiTable, height: usize) -> HomologicalInvariants {
    let degrees: Vec<usize> = b
        .entries
        .keys()
        .filter(|&&(i, _)| i == 1)
        .map(|&(_, j)| j)
        .collect();
    let gen_degree = match degrees.as_slice() {
        [d] => Some(*d),
        _ => None,
    };
    let reg = b.reg();
    let pd = b.pd();
    HomologicalInvariants {
        reg,
        pd,
        depth: b.depth(),
        is_cm: pd == height,
        has_linear_resolution: gen_degree.map(|d| reg + 1 == d),
        gen_degree,
    }
}
