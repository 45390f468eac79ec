use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}; graphs must be loopless")]
    Loop(usize),

    #[error("parts {0} and {1} overlap")]
    OverlappingParts(usize, usize),

    #[error("part {0} is empty")]
    EmptyPart(usize),

    #[error("empty vertex set")]
    EmptyGraph,

    #[error("empty complex")]
    EmptyComplex,

    #[error("weights must be positive and sum to 1")]
    BadWeights,

    #[error("left vertex {0} has no neighbours")]
    IsolatedLeftVertex(usize),

    #[error("face budget exceeded: more than {budget} faces")]
    BudgetExceeded { budget: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not a lower facet: {0:?}")]
    NotLowerFacet(Vec<usize>),

    #[error("not a partial lattice path: {0:?}")]
    NotAPath(Vec<(usize, usize)>),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
