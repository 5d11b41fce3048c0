use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graphs addressable without external files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// The 14-vertex chordal graph used as the running worked example.
    Fig1,
    Cycle(usize),
    Path(usize),
    Complete(usize),
    /// `K_n` without the edge `{1, 2}`.
    CompleteMinusEdge(usize),
    /// `r + 1` copies of `K_t` pairwise meeting in the single vertex 1.
    CliqueStar { t: usize, r: usize },
}

const FIG1_EDGES: [(usize, usize); 24] = [
    (1, 2),
    (2, 4),
    (3, 4),
    (1, 3),
    (1, 4),
    (2, 3),
    (3, 5),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (6, 8),
    (7, 9),
    (8, 9),
    (9, 10),
    (10, 11),
    (11, 12),
    (12, 13),
    (13, 14),
    (11, 14),
    (11, 13),
    (12, 14),
    (4, 6),
    (3, 6),
];

impl Fixture {
    /// Resolves a fixture name and its integer parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Fixture> {
        let bad = |msg: &str| Error::FixtureParams {
            name: name.to_string(),
            msg: msg.to_string(),
        };
        let one = || match params {
            [k] => Ok(*k),
            _ => Err(bad("expected exactly one parameter")),
        };
        let fx = match name {
            "fig1" => {
                if !params.is_empty() {
                    return Err(bad("takes no parameters"));
                }
                Fixture::Fig1
            }
            "cycle" => Fixture::Cycle(one()?),
            "path" => Fixture::Path(one()?),
            "complete" => Fixture::Complete(one()?),
            "complete_minus_edge" => Fixture::CompleteMinusEdge(one()?),
            "clique_star" => match params {
                [t, r] => Fixture::CliqueStar { t: *t, r: *r },
                _ => return Err(bad("expected parameters t,r")),
            },
            other => return Err(Error::UnknownFixture(other.to_string())),
        };
        fx.validate()?;
        Ok(fx)
    }

    fn validate(self) -> Result<()> {
        let (name, ok, msg) = match self {
            Fixture::Fig1 => return Ok(()),
            Fixture::Cycle(n) => ("cycle", n >= 3, "needs n >= 3"),
            Fixture::Path(n) => ("path", n >= 1, "needs n >= 1"),
            Fixture::Complete(n) => ("complete", n >= 1, "needs n >= 1"),
            Fixture::CompleteMinusEdge(n) => ("complete_minus_edge", n >= 2, "needs n >= 2"),
            Fixture::CliqueStar { t, .. } => ("clique_star", t >= 2, "needs t >= 2"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FixtureParams {
                name: name.into(),
                msg: msg.into(),
            })
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Fig1 => write!(f, "fig1"),
            Fixture::Cycle(n) => write!(f, "cycle({n})"),
            Fixture::Path(n) => write!(f, "path({n})"),
            Fixture::Complete(n) => write!(f, "complete({n})"),
            Fixture::CompleteMinusEdge(n) => write!(f, "complete_minus_edge({n})"),
            Fixture::CliqueStar { t, r } => write!(f, "clique_star({t},{r})"),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;

    /// Accepts `name` or `name(a,b,...)`, as printed by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = match s.split_once('(') {
            None => (s, Vec::new()),
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| Error::FixtureParams {
                    name: name.into(),
                    msg: "unbalanced parenthesis".into(),
                })?;
                let params = inner
                    .split(',')
                    .map(|p| {
                        p.trim().parse::<usize>().map_err(|_| Error::FixtureParams {
                            name: name.into(),
                            msg: format!("`{p}` is not a non-negative integer"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                (name, params)
            }
        };
        Fixture::from_name(name, &params)
    }
}

/// Builds a named fixture graph.
pub fn fixture(fx: Fixture) -> Result<Graph> {
    fx.validate()?;
    match fx {
        Fixture::Fig1 => Graph::from_edges(14, FIG1_EDGES),
        Fixture::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i, i + 1))),
        Fixture::Cycle(n) => Graph::from_edges(n, (1..n).map(|i| (i, i + 1)).chain([(1, n)])),
        Fixture::Complete(n) => Graph::from_edges(n, all_pairs(1..=n)),
        Fixture::CompleteMinusEdge(n) => {
            Graph::from_edges(n, all_pairs(1..=n).filter(|&e| e != (1, 2)))
        }
        Fixture::CliqueStar { t, r } => {
            let n = 1 + (r + 1) * (t - 1);
            let mut g = Graph::empty(n)?;
            for copy in 0..=r {
                let block: Vec<usize> = std::iter::once(1)
                    .chain((0..t - 1).map(|k| 2 + copy * (t - 1) + k))
                    .collect();
                for (a, b) in all_pairs(block.iter().copied()) {
                    g.add_edge(a, b)?;
                }
            }
            Ok(g)
        }
    }
}

fn all_pairs<I>(it: I) -> impl Iterator<Item = (usize, usize)>
where
    I: Iterator<Item = usize> + Clone,
{
    let items: Vec<usize> = it.collect();
    let len = items.len();
    (0..len).flat_map(move |i| {
        let items = items.clone();
        (i + 1..len).map(move |j| (items[i], items[j]))
    })
}
