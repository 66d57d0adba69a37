use thiserror::Error;

use crate::field::Field;

/// Failures of exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(Vec<usize>),
    #[error("edge {0:?} is not an edge of the complex")]
    NotAnEdge(Vec<usize>),
    #[error("missing cocycle value on edge {0:?}")]
    MissingEdgeValue([usize; 2]),
    #[error("cocycle condition fails on {} triangle(s), first {:?}", .0.len(), .0.first())]
    InvalidCocycle(Vec<[usize; 3]>),
    #[error("vertices {0} and {1} do not span an edge")]
    NotAdjacent(usize, usize),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("the class is exact; use the untwisted tooling")]
    ExactClass,
    #[error("cochains live on different complexes or degrees")]
    MismatchedCochains,
    #[error("twist must be a nonzero field element")]
    ZeroTwist,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("field {field} too small: need {needed} admissible elements")]
    FieldTooSmall { field: Field, needed: usize },
    #[error("Massey product of order {order} requested but order {failed} does not vanish")]
    LowerOrderNonVanishing { order: usize, failed: usize },
    #[error("{0} lies in Supp; choose a generic value")]
    NotGeneric(String),
    #[error("certificate does not replay: {0}")]
    Replay(String),
    #[error("internal limit exceeded: {0}")]
    Limit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
