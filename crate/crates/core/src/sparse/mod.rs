//! Compressed-column sparse matrices, boolean sparsity patterns and matrix
//! sequences.

mod matrix;
mod pattern;
mod sequence;

pub use matrix::SparseMatrix;
pub use pattern::SparsityPattern;
pub use sequence::{MatrixSequence, SubsetChain};
