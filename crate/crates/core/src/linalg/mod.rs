//! Exact integer linear algebra, generic over [`IntScalar`](crate::scalar::IntScalar).

mod lattice;
mod matrix;
mod snf;
mod sparse;

pub use lattice::{image_basis, kernel_basis, solve_integer, Lattice};
pub use matrix::Matrix;
pub use snf::{invariant_factors, smith_normal_form, SmithNormalForm, SnfTransforms};
pub use sparse::{sparse_invariant_factors, InvariantFactors, SparseMatrix};
