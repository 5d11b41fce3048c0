use thiserror::Error;

/// Errors raised by graph construction, ideal arithmetic and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("bad parameters for fixture `{name}`: {msg}")]
    FixtureParams { name: String, msg: String },

    #[error("ideals live in different rings ({left} vs {right} variables)")]
    AmbientMismatch { left: usize, right: usize },

    #[error("block size t must be at least {min}, got {t}")]
    BlockSize { t: usize, min: usize },

    #[error("{count} connected {t}-subsets exceed the cap of {cap}")]
    TooManySubsets { count: usize, t: usize, cap: usize },

    #[error("oracle limited to {cap} variables, ideal involves {n}")]
    OracleCap { n: usize, cap: usize },

    #[error("the unit ideal has no Betti table")]
    UnitIdeal,

    #[error("vertex {0} is not simplicial")]
    NotSimplicial(usize),

    #[error("invalid ordering: {0}")]
    InvalidOrder(String),

    #[error("invalid field: {0}")]
    InvalidField(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
