//! Finite simple graphs on vertices `1..=n`.

mod chordal;
mod fixtures;
mod random;

pub use chordal::{chordality, simplicial_vertices, ChordalityCertificate};
pub use fixtures::{fixture, Fixture};
pub use random::{erdos_renyi, random_chordal};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A labeled finite simple graph.
///
/// Adjacency is stored as one [`VertexSet`] per vertex and is kept symmetric
/// and irreflexive by every constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    labels: Option<Vec<String>>,
    adj: Vec<VertexSet>,
}

/// Result of [`Graph::induced_subgraph`]: the subgraph on `1..=|W|` and the
/// original vertex behind each new index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[k - 1]` is the vertex of the parent graph renamed to `k`.
    pub original: Vec<usize>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph {
            n,
            labels: None,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; repeated edges are ignored, self-loops rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Parse {
                line: 0,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
        Ok(())
    }

    /// Attaches display labels; they must be distinct and one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected {} labels, got {}", self.n, labels.len()),
            });
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("duplicate label `{dup}`"),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u - 1].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|u| {
                self.adj[u - 1]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.last() {
            Some(v) if v > self.n => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    /// Union of the neighbourhoods of `c` without `c` itself; with `closed`
    /// the set `c` is added back.
    pub fn neighborhood(&self, c: VertexSet, closed: bool) -> Result<VertexSet> {
        self.check_set(c)?;
        Ok(self.neighborhood_unchecked(c, closed))
    }

    pub(crate) fn neighborhood_unchecked(&self, c: VertexSet, closed: bool) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in c {
            out = out.union(self.adj[v - 1]);
        }
        if closed {
            out.union(c)
        } else {
            out.difference(c)
        }
    }

    /// `G[W]` relabelled onto `1..=|W|` in increasing order of the kept
    /// vertices.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<InducedSubgraph> {
        self.check_set(w)?;
        let original = w.to_vec();
        let mut index = vec![0usize; self.n + 1];
        for (k, &v) in original.iter().enumerate() {
            index[v] = k + 1;
        }
        let mut g = Graph::empty(original.len())?;
        for (k, &v) in original.iter().enumerate() {
            for u in self.adj[v - 1].intersection(w) {
                g.adj[k].insert(index[u]);
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(original.iter().map(|&v| labels[v - 1].clone()).collect());
        }
        Ok(InducedSubgraph { graph: g, original })
    }

    /// `G \ S` kept on the same vertex numbering: every edge touching `S` is
    /// dropped and the vertices of `S` stay behind as isolated vertices.
    ///
    /// Isolated vertices lie in no connected `t`-set for `t >= 2`, so ideals,
    /// matchings and covers built from the result agree with those of the
    /// honest vertex deletion while living in the same polynomial ring.
    pub fn isolate(&self, s: VertexSet) -> Graph {
        let adj = (1..=self.n)
            .map(|v| {
                if s.contains(v) {
                    VertexSet::EMPTY
                } else {
                    self.adj[v - 1].difference(s)
                }
            })
            .collect();
        Graph {
            n: self.n,
            labels: self.labels.clone(),
            adj,
        }
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n)?;
        }
        Ok(g)
    }

    /// Renames vertex `v` to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u - 1], perm[v - 1])?;
        }
        Ok(g)
    }

    /// Whether `G[A]` is connected. The empty set and singletons count as
    /// connected.
    pub fn is_connected_subset(&self, a: VertexSet) -> Result<bool> {
        self.check_set(a)?;
        Ok(self.is_connected_unchecked(a))
    }

    pub(crate) fn is_connected_unchecked(&self, a: VertexSet) -> bool {
        let Some(start) = a.first() else {
            return true;
        };
        self.reach(start, a) == a
    }

    /// Vertices of `within` reachable from `start` inside `G[within]`.
    fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self
                .neighborhood_unchecked(frontier, false)
                .intersection(within)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Connected components, each as a vertex set, ordered by least element.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let comp = self.reach(v, left);
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn largest_component(&self) -> usize {
        self.components().iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// Every `C` with `|C| = t` and `G[C]` connected, sorted lexicographically
    /// by vertex tuple. These are the edges of the hypergraph `H(G, t)`.
    ///
    /// Uses the ESU extension scheme so each connected set is produced once,
    /// rooted at its least vertex.
    pub fn connected_subsets(&self, t: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if t == 0 {
            return out;
        }
        for v in 1..=self.n {
            let above = VertexSet::full(self.n).difference(VertexSet::full(v));
            let ext = self.adj[v - 1].intersection(above);
            self.extend_connected(VertexSet::singleton(v), ext, above, t, &mut out);
        }
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    fn extend_connected(
        &self,
        sub: VertexSet,
        mut ext: VertexSet,
        allowed: VertexSet,
        t: usize,
        out: &mut Vec<VertexSet>,
    ) {
        if sub.len() == t {
            out.push(sub);
            return;
        }
        let closed = self.neighborhood_unchecked(sub, true);
        while let Some(w) = ext.first() {
            ext.remove(w);
            let fresh = self.adj[w - 1].intersection(allowed).difference(closed);
            self.extend_connected(sub.with(w), ext.union(fresh), allowed, t, out);
        }
    }

    /// Serializes to the edge-list format accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Parses the edge-list format: `#` comment lines, then the vertex count,
/// then one `u v` line per edge with `1 <= u < v <= n`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| Error::Parse { line, msg };
        if raw.starts_with('#') {
            continue;
        }
        let body = raw.strip_suffix('\r').unwrap_or(raw);
        match graph.as_mut() {
            None => {
                if body.trim().is_empty() {
                    continue;
                }
                let n: usize = body
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("expected vertex count, found `{body}`")))?;
                graph = Some(Graph::empty(n).map_err(|e| err(e.to_string()))?);
            }
            Some(g) => {
                if body.trim().is_empty() {
                    continue;
                }
                let mut parts = body.split(' ');
                let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(err(format!("expected `u v`, found `{body}`")));
                };
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(format!("`{s}` is not a vertex index")))
                };
                let (u, v) = (parse(a)?, parse(b)?);
                for x in [u, v] {
                    if x == 0 || x > g.n() {
                        return Err(err(format!("vertex {x} is outside 1..={}", g.n())));
                    }
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                if u > v {
                    return Err(err(format!("edge `{u} {v}` must be written smaller vertex first")));
                }
                g.add_edge(u, v).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing vertex count".into(),
    })
}
