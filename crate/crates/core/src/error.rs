use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exhaustive check over {atoms} atoms exceeds the bound of {bound}; use sampled mode")]
    BoundExceeded { atoms: usize, bound: usize },

    #[error("group order exceeds the bound of {bound}")]
    OrderBoundExceeded { bound: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid coset specification: {0}")]
    InvalidCosetSpec(String),

    #[error("invalid quantale table: {0}")]
    InvalidQuantale(String),

    #[error("invalid hypergroupoid: {0}")]
    InvalidHypergroupoid(String),

    #[error("invalid weight table: {0}")]
    InvalidWeights(String),

    #[error("table is not an atomic modular quantale: {0}")]
    NotModular(String),

    #[error("hypergroupoid is not semi-simple: arrow {arrow} has no simple factorization")]
    NotSemisimple { arrow: usize },

    #[error("structure constant <{a}|{g},{h}> is infinite")]
    InfiniteCoefficient { a: usize, g: usize, h: usize },

    #[error("arrow {arrow} has an infinite weight")]
    InfiniteWeight { arrow: usize },

    #[error("arrow {arrow} has a zero weight")]
    ZeroWeight { arrow: usize },

    #[error("matrix is not idempotent and self-adjoint")]
    NotProjObject,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("arrow id {0} out of range")]
    UnknownArrow(usize),
}
