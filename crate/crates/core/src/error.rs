use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arrow {0} -> {0} is a loop")]
    LoopArrow(usize),
    #[error("arrows {0} -> {1} and {1} -> {0} form a 2-cycle")]
    TwoCycle(usize, usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("{{{0}, {1}}} is not a diagonal of the {2}-gon")]
    InvalidDiagonal(usize, usize, usize),
    #[error("diagonals {{{0}, {1}}} and {{{2}, {3}}} cross")]
    CrossingDiagonals(usize, usize, usize, usize),
    #[error("a triangulation of the {m}-gon has {expected} diagonals, got {got}")]
    WrongDiagonalCount { m: usize, expected: usize, got: usize },
    #[error("{{{0}, {1}}} is not a diagonal of this triangulation")]
    NotADiagonal(usize, usize),
    #[error("polygon must have at least 3 vertices, got {0}")]
    PolygonTooSmall(usize),
    #[error("invalid diagonal labeling: {0}")]
    InvalidLabeling(String),
    #[error("diagonal label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("quiver is not of mutation type A")]
    NotMutationTypeA,
    #[error("no triangulation reproduces the quiver")]
    SearchExhausted,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid set partition: {0}")]
    InvalidPartition(String),
    #[error("unknown generator t{0}")]
    UnknownGenerator(usize),
    #[error("vertices {0} and {1} lie in different components")]
    DisconnectedPair(usize, usize),
    #[error("permutation is not in the Young subgroup")]
    NotInSubgroup,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
