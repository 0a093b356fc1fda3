//! Exact scalars over ℚ(i) and the linear algebra built on them.

mod bareiss;
mod matrix;
mod scalar;
pub mod sparse;
mod subspace;

pub use matrix::{
    dot, matrix_from_json, random_invertible, random_invertible_gaussian, random_scalar,
    random_vector, unit_vector, vec_add, vec_is_zero, vec_scale, vec_sub, Matrix,
};
pub use scalar::{FieldTag, Scalar};
pub use sparse::SparseSystem;
pub use subspace::Subspace;

/// Row rank of `m`.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Right kernel of `m` in canonical echelon form.
pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

/// One solution of `m·x = rhs`, if any.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    m.solve(rhs)
}
