//! Dense exact linear algebra over any [`Field`](crate::arith::Field), plus
//! integer matrices for Cartan data.

mod int_matrix;
mod matrix;

pub use int_matrix::{int_det, int_matpow, IntMatrix};
pub use matrix::{charpoly, eval_poly_at_matrix, inverse, kernel_basis, rank, rref, solve, Matrix};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
}
