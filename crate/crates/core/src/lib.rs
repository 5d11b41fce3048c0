pub mod decomposition;
pub mod error;
pub mod graph;
pub mod harness;
pub mod homology;
pub mod ideal;
pub mod matching;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{parse_graph, Graph};
pub use ideal::{t_clique_ideal, t_connected_ideal, Monomial, SquareFreeIdeal};
pub use vertex_set::VertexSet;

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/matching.md")]
    mod matching {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
