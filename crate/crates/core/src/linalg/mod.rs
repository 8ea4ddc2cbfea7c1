//! Exact scalars and dense matrices over ℚ and F_p.
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! every result is reproducible bit for bit.

mod matrix;
mod scalar;

pub use matrix::{LinalgError, Matrix, Rref};
pub use scalar::{Field, Rat, Scalar, DEFAULT_PRIME};
