//! Desk-scale matrix sequence generators.
//!
//! Two generators produce sequences with identical sparsity patterns across
//! all entries, so the pattern-inclusion chain holds trivially:
//!
//! * [`generate_cd2d_sequence`]: Jacobians of a damped Newton iteration on a
//!   nonlinear convection-diffusion problem discretized with second-order
//!   central differences on the unit square,
//! * [`generate_shifted_sequence`]: `K + sigma_k M` for a five-point
//!   Laplacian `K` and a diagonal or tridiagonal mass-like matrix `M`,
//!   standing in for the shifted systems of implicit time stepping.

mod cd2d;
mod shifted;

pub use cd2d::{
    assemble_cd2d_jacobian, assemble_cd2d_residual, generate_cd2d_sequence, Cd2dConfig, Cd2dOutcome,
};
pub use shifted::{generate_shifted_sequence, MassKind, ShiftedConfig};
