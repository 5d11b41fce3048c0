use serde::Serialize;

use super::Graph;
use crate::vertex_set::VertexSet;

/// Outcome of a chordality test, with a certificate either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordalityCertificate {
    pub is_chordal: bool,
    /// Perfect elimination ordering, present when chordal.
    pub peo: Option<Vec<usize>>,
    /// Induced cycle of length at least four, present when not chordal.
    pub witness_cycle: Option<Vec<usize>>,
}

/// Lexicographic breadth-first search. Among vertices with equal labels the
/// smallest index is taken. Returns vertices in visiting order.
fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut visited = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let mut best: Option<usize> = None;
        for v in g.vertices().difference(visited) {
            match best {
                Some(b) if labels[v] <= labels[b] => {}
                _ => best = Some(v),
            }
        }
        let v = best.expect("unvisited vertex");
        visited.insert(v);
        order.push(v);
        for u in g.neighbors(v).difference(visited) {
            labels[u].push(n - step);
        }
    }
    order
}

/// Tests chordality via Lex-BFS and the perfect-elimination check.
///
/// On failure an induced cycle of length at least four is extracted, first
/// from the vertex where the elimination check broke and otherwise by a full
/// scan over vertices with two non-adjacent neighbours.
pub fn chordality(g: &Graph) -> ChordalityCertificate {
    let mut peo = lex_bfs(g);
    peo.reverse();
    let mut position = vec![0usize; g.n() + 1];
    for (k, &v) in peo.iter().enumerate() {
        position[v] = k;
    }
    let later = |v: usize| -> VertexSet {
        g.neighbors(v)
            .iter()
            .filter(|&u| position[u] > position[v])
            .collect()
    };
    for &v in &peo {
        let succ = later(v);
        let Some(parent) = succ.iter().min_by_key(|&u| position[u]) else {
            continue;
        };
        let rest = succ.without(parent);
        if !rest.is_subset(g.neighbors(parent)) {
            let cycle = cycle_through(g, v, succ).or_else(|| find_induced_cycle(g));
            debug_assert!(cycle.is_some(), "non-chordal graph without witness");
            return ChordalityCertificate {
                is_chordal: false,
                peo: None,
                witness_cycle: cycle,
            };
        }
    }
    ChordalityCertificate {
        is_chordal: true,
        peo: Some(peo),
        witness_cycle: None,
    }
}

/// Looks for an induced cycle `v, a, ..., b` with `a, b` non-adjacent
/// members of `candidates ⊆ N(v)` and the rest of the cycle outside `N[v]`.
fn cycle_through(g: &Graph, v: usize, candidates: VertexSet) -> Option<Vec<usize>> {
    let closed = g.neighbors(v).with(v);
    for a in candidates {
        for b in candidates.iter().filter(|&b| b > a && !g.has_edge(a, b)) {
            let allowed = g.vertices().difference(closed).with(a).with(b);
            if let Some(path) = shortest_path(g, a, b, allowed) {
                let mut cycle = vec![v];
                cycle.extend(path);
                return Some(cycle);
            }
        }
    }
    None
}

fn find_induced_cycle(g: &Graph) -> Option<Vec<usize>> {
    (1..=g.n()).find_map(|v| cycle_through(g, v, g.neighbors(v)))
}

/// Breadth-first shortest path from `a` to `b` inside `G[allowed]`.
fn shortest_path(g: &Graph, a: usize, b: usize, allowed: VertexSet) -> Option<Vec<usize>> {
    let mut parent = vec![0usize; g.n() + 1];
    let mut seen = VertexSet::singleton(a);
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u).intersection(allowed).difference(seen) {
            seen.insert(w);
            parent[w] = u;
            queue.push_back(w);
        }
    }
    None
}

/// Vertices whose open neighbourhood is a clique, ascending.
pub fn simplicial_vertices(g: &Graph) -> Vec<usize> {
    (1..=g.n()).filter(|&v| is_clique(g, g.neighbors(v))).collect()
}

pub(crate) fn is_clique(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|u| s.without(u).is_subset(g.neighbors(u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixture, random_chordal, Fixture};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn is_peo(g: &Graph, order: &[usize]) -> bool {
        order.iter().enumerate().all(|(k, &v)| {
            let later: VertexSet = order[k + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            is_clique(g, later)
        })
    }

    fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
        let k = cycle.len();
        if k < 4 {
            return false;
        }
        let s: VertexSet = cycle.iter().copied().collect();
        if s.len() != k {
            return false;
        }
        (0..k).all(|i| {
            let v = cycle[i];
            let expected: VertexSet = [cycle[(i + 1) % k], cycle[(i + k - 1) % k]].into();
            g.neighbors(v).intersection(s) == expected
        })
    }

    #[test]
    fn fixture_chordality() {
        let fig1 = fixture(Fixture::Fig1).unwrap();
        let cert = chordality(&fig1);
        assert!(cert.is_chordal);
        assert!(is_peo(&fig1, cert.peo.as_ref().unwrap()));

        let c5 = fixture(Fixture::Cycle(5)).unwrap();
        let cert = chordality(&c5);
        assert!(!cert.is_chordal);
        let cyc = cert.witness_cycle.unwrap();
        assert_eq!(cyc.len(), 5);
        assert!(is_induced_cycle(&c5, &cyc));

        assert!(chordality(&fixture(Fixture::Complete(6)).unwrap()).is_chordal);
    }

    #[test]
    fn witness_in_larger_graph() {
        // A 4-cycle 1-2-3-4 with a pendant triangle hanging off vertex 1.
        let g = Graph::from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (5, 6), (1, 6)])
            .unwrap();
        let cert = chordality(&g);
        assert!(!cert.is_chordal);
        assert!(is_induced_cycle(&g, &cert.witness_cycle.unwrap()));
    }

    #[test]
    fn simplicial_examples() {
        let fig1 = fixture(Fixture::Fig1).unwrap();
        assert!(simplicial_vertices(&fig1).contains(&5));
        assert_eq!(simplicial_vertices(&fixture(Fixture::Path(4)).unwrap()), vec![1, 4]);
        assert!(simplicial_vertices(&fixture(Fixture::Cycle(5)).unwrap()).is_empty());
    }

    /// Brute force: a graph is chordal iff no vertex subset of size >= 4
    /// induces a cycle.
    fn brute_chordal(g: &Graph) -> bool {
        (0u128..1 << g.n()).map(VertexSet::from_bits).all(|s| {
            s.len() < 4
                || !(g.is_connected_unchecked(s)
                    && s.iter().all(|v| g.neighbors(v).intersection(s).len() == 2))
        })
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let g = crate::graph::erdos_renyi(7, 0.45, &mut rng).unwrap();
            let cert = chordality(&g);
            assert_eq!(cert.is_chordal, brute_chordal(&g), "{}", g.to_edge_list());
            if cert.is_chordal {
                assert!(is_peo(&g, cert.peo.as_ref().unwrap()));
            } else {
                assert!(is_induced_cycle(&g, cert.witness_cycle.as_ref().unwrap()));
            }
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..100 {
            let g = crate::graph::erdos_renyi(8, 0.4, &mut rng).unwrap();
            let h = random_chordal(9, seed, 4);
            for graph in [g, h] {
                let mut perm: Vec<usize> = (1..=graph.n()).collect();
                perm.shuffle(&mut rng);
                let relabeled = graph.relabel(&perm).unwrap();
                assert_eq!(chordality(&graph).is_chordal, chordality(&relabeled).is_chordal);
            }
        }
    }
}
