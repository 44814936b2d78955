//! Exact scalars over Q and GF(p), and dense linear algebra on top of them.

mod matrix;
mod scalar;

pub use matrix::{ExactMatrix, RowSpace, SolveOutcome};
pub use scalar::{Field, ModInt, Scalar, DEFAULT_PRIME};
