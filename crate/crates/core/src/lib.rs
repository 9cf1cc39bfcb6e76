pub mod complex;
pub mod decide;
pub mod error;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod numtheory;
pub mod rep;
pub mod scalar;

pub use error::{Error, Result};
pub use num_bigint::BigInt;

/// Arbitrary-precision integer used throughout the homological engine.
pub type Int = BigInt;
pub type IntMatrix = linalg::Matrix<Int>;
pub type SparseIntMatrix = linalg::SparseMatrix<Int>;
