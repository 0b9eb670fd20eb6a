//! Coxeter systems, their geometric representation, and the right weak order.

mod matrix;
mod system;
pub mod types;
mod weak;

pub use matrix::{BondOrder, CoxeterDiagram, CoxeterMatrix, DiagramEdge};
pub use system::{CoxeterSystem, GroupElement, Root, RootSign};
pub use weak::{ReflectionSet, Universe};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("Coxeter matrix is empty")]
    EmptyMatrix,
    #[error("at most 64 generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) must be 1")]
    BadDiagonal { i: usize },
    #[error("off-diagonal entry ({i}, {j}) = {value} must be at least 2 or infinite")]
    EntryTooSmall { i: usize, j: usize, value: u32 },
    #[error("{names} generator names given for a rank {rank} matrix")]
    NameCount { names: usize, rank: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator name {0:?} is empty or contains a separator")]
    BadName(String),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown Coxeter type {0:?}")]
    UnknownType(String),
    #[error("root with mixed coordinate signs: {0}")]
    MixedSignRoot(String),
    #[error("no upper bound of length at most {0}; widen the cap")]
    NoUpperBoundWithinCap(usize),
    #[error("meet of an empty set")]
    EmptyInput,
    #[error("the Coxeter group is infinite")]
    GroupNotFinite,
}
