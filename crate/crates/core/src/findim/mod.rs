//! Finite-dimensional commutative algebras, operators on them, and the Lie
//! structures those operators induce.

pub mod algebra;
pub mod analysis;
pub mod lie;
pub mod operator;
pub mod quotient;

use thiserror::Error;

use crate::linalg::LinAlgError;

pub use algebra::{AlgebraReport, StructureAlgebra};
pub use lie::{BracketTable, InduceResult, LieReport};
pub use operator::LawCheck;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FindimError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("not a commutative unital algebra: {0:?}")]
    NotAnAlgebra(AlgebraReport),
    #[error("not a Lie bracket: {0:?}")]
    NotLie(LieReport),
    #[error("operator is not averaging (fails at basis pair ({i}, {j})); use the raw bracket to skip this check")]
    NotAveraging { i: usize, j: usize },
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("algebra failed the zero-divisor check")]
    NotDomain,
    #[error("not an averaging ideal: {0}")]
    NotAveragingIdeal(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant breach: {0}")]
    InvariantBreach(String),
}
