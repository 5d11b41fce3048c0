use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::Result;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

const CLIQUE_ATTEMPTS: usize = 64;

/// Random chordal graph grown one vertex at a time.
///
/// Vertex `v` is attached to a clique of the graph on `1..v`: first a size is
/// drawn uniformly from `0..=min(max_clique, ω)` where `ω` is the current
/// clique number, then a clique of that size is sampled greedily (up to 64
/// attempts, falling back to a single random vertex). Attaching a new vertex
/// to a clique keeps the graph chordal, with the new vertex simplicial.
///
/// Deterministic for fixed arguments.
pub fn random_chordal(n: usize, seed: u64, max_clique: usize) -> Graph {
    assert!(n <= MAX_VERTICES, "random_chordal: n = {n} exceeds {MAX_VERTICES}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n).expect("n checked above");
    let mut omega = 0usize;
    for v in 1..=n {
        let existing = v - 1;
        let cap = max_clique.min(omega);
        let size = if cap == 0 { 0 } else { rng.gen_range(0..=cap) };
        let clique = if size == 0 {
            VertexSet::EMPTY
        } else {
            sample_clique(&g, existing, size, &mut rng)
        };
        for u in clique {
            g.add_edge(u, v).expect("in range");
        }
        omega = omega.max(clique.len() + 1);
    }
    g
}

fn sample_clique(g: &Graph, existing: usize, size: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    let pool = VertexSet::full(existing);
    for _ in 0..CLIQUE_ATTEMPTS {
        let start = rng.gen_range(1..=existing);
        let mut clique = VertexSet::singleton(start);
        let mut common = g.neighbors(start).intersection(pool);
        while clique.len() < size && !common.is_empty() {
            let pick = common.iter().nth(rng.gen_range(0..common.len())).unwrap();
            clique.insert(pick);
            common = common.intersection(g.neighbors(pick));
        }
        if clique.len() == size {
            return clique;
        }
    }
    VertexSet::singleton(rng.gen_range(1..=existing))
}

/// `G(n, p)`: every pair becomes an edge independently with probability `p`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chordality;

    #[test]
    fn single_vertex_and_edgeless() {
        let g = random_chordal(1, 3, 2);
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        for seed in 0..20 {
            assert_eq!(random_chordal(9, seed, 0).edge_count(), 0);
        }
    }

    #[test]
    fn always_chordal() {
        let mut count = 0;
        for n in 1..=12 {
            for k in 0..=4 {
                for seed in 0..17u64 {
                    let g = random_chordal(n, seed * 7919 + n as u64, k);
                    assert!(chordality(&g).is_chordal, "{}", g.to_edge_list());
                    count += 1;
                }
            }
        }
        assert!(count >= 1000);
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_chordal(12, 42, 3), random_chordal(12, 42, 3));
        let distinct: std::collections::HashSet<_> =
            (0..20).map(|s| random_chordal(10, s, 3).to_edge_list()).collect();
        assert!(distinct.len() > 10);
    }

    #[test]
    fn respects_max_clique() {
        for seed in 0..50 {
            let g = random_chordal(10, seed, 2);
            // attaching to cliques of size <= 2 never creates K_4
            for s in g.connected_subsets(4) {
                assert!(!crate::graph::chordal::is_clique(&g, s));
            }
        }
    }
}
