//! Finite-dimensional Lie algebras over Q given by structure constants.
//!
//! Besides the bracket and adjoint representation, this crate checks the
//! hypotheses the affinity decision needs: the Jacobi identity, and a
//! designated splitting `g = l ⊕ n` of the algebra into a reductive part and
//! its nilradical. It also builds the derived series of `n` and the action of
//! `l` on its successive quotients.

mod algebra;
mod flag;
mod levi;

pub use algebra::{
    ad_image, derived_subalgebra, killing_form, killing_form_of, lower_central_series,
    nilpotency_class, validate_algebra, Element, LieAlgebra, SparseVector,
};
pub use flag::{derived_series, induced_action, project, FlagLevel};
pub use levi::{decompose, is_nilpotent_element, validate_levi, LeviData, LeviError, LeviReport};

use exact_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket pair ({i},{j}) must satisfy i < j")]
    BracketOrder { i: usize, j: usize },
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("Jacobi identity fails on basis triples {failures:?}")]
    Jacobi { failures: Vec<(usize, usize, usize)> },
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("derived series stalls before reaching zero")]
    NotSolvable,
    #[error("element is not in the expected subspace")]
    NotInSubspace,
    #[error("levi and nilradical do not form a direct sum decomposition")]
    NotDirectSum,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
