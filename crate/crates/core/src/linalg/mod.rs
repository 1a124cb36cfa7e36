//! Exact scalars and the dense linear algebra the rest of the crate is built on.

mod matrix;
mod scalar;
mod subspace;
pub mod vector;

pub use matrix::Matrix;
pub use scalar::{Field, RawScalar, Scalar};
pub use subspace::{Quotient, Subspace};
pub use vector::Vector;

use crate::error::Result;

/// Some `x` with `a · x = b`, free variables zero; `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vector>> {
    a.solve(b)
}

pub fn kernel(a: &Matrix) -> Subspace {
    a.kernel()
}

pub fn rank(a: &Matrix) -> usize {
    a.rank()
}
