//! Sparse approximate maps between matrices in a sequence of sparse linear systems.
//!
//! Discretized PDEs frequently produce a sequence of linear systems
//! `A_k x_k = b_k` whose coefficient matrices change slowly. Instead of
//! building a fresh preconditioner for every system, a *sparse approximate
//! map* (SAM) `N_k` maps a later matrix back onto an earlier one for which a
//! preconditioner already exists:
//!
//! ```text
//! N_k = argmin_N ||A_k N - A_0||_F    subject to an imposed sparsity pattern S
//! ```
//!
//! The minimization splits into one small dense least-squares problem per
//! column, which this crate solves independently (in parallel with the
//! `parallel` feature enabled).
//!
//! The crate provides:
//!
//! * [`SparseMatrix`], [`SparsityPattern`], [`MatrixSequence`] and Matrix
//!   Market I/O ([`market`]),
//! * the a-priori pattern strategies (global threshold, column threshold,
//!   fixed per-column count), neighbor-level expansion via boolean pattern
//!   powers, and transitive closure ([`patterns`]),
//! * the SAM solver itself together with the dense exact map, residual
//!   metrics and per-column diagnostics ([`sam`]),
//! * desk-scale sequence generators: a nonlinear convection-diffusion Newton
//!   sequence and a synthetic shifted-system sequence ([`problems`]),
//! * an experiment driver that sweeps pattern recipes over a sequence and
//!   emits CSV reports ([`experiment`]).

pub mod dense;
pub mod error;
pub mod experiment;
pub mod market;
mod par;
pub mod patterns;
pub mod problems;
pub mod sam;
pub mod samples;
pub mod sparse;

pub use error::{Error, Result};
pub use experiment::{ExperimentConfig, ReportRow, SequenceSource};
pub use patterns::{PatternRecipe, ScalingMode, SparsificationStrategy};
pub use sam::{compute_sam, SamResult};
pub use sparse::{MatrixSequence, SparseMatrix, SparsityPattern, SubsetChain};

/// Largest dimension accepted by dense fallbacks such as
/// [`SparseMatrix::to_dense`] and [`sam::exact_map`]. These allocate `n^2`
/// doubles, so the cap keeps accidental use on large systems from exhausting
/// memory. Override per call where a larger budget is intended.
pub const DEFAULT_DENSE_CAP: usize = 4000;

/// Largest dimension accepted by [`patterns::transitive_closure`], whose
/// worst case output is a fully dense pattern.
pub const DEFAULT_CLOSURE_CAP: usize = 2048;
