//! Synthetic shifted-system sequences `A_k = K + sigma_k M`.
//!
//! `K` is the five-point Laplacian on the unit square scaled by `1/h^2` and
//! `M` is either the identity or a tridiagonal mass-like matrix acting along
//! grid rows. Every `A_k` shares the pattern of `K`, so the sequence
//! satisfies the pattern-inclusion chain by construction.

use crate::error::{Error, Result};
use crate::sparse::{MatrixSequence, SparseMatrix};

/// Shape of the mass-like matrix added per shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassKind {
    /// The identity.
    Diagonal,
    /// Row-wise tridiagonal with `2/3` on the diagonal and `1/6` toward the
    /// in-row neighbors (the 1D consistent mass stencil, unit row sums).
    Tridiagonal,
}

/// Configuration of the shifted-sequence generator.
#[derive(Debug, Clone)]
pub struct ShiftedConfig {
    /// Interior grid points per side; the matrices have dimension `m * m`.
    pub m: usize,
    /// Shift values, one matrix per entry; must be nonnegative and
    /// nondecreasing.
    pub shifts: Vec<f64>,
    pub mass_kind: MassKind,
}

impl ShiftedConfig {
    pub fn new(m: usize, shifts: Vec<f64>, mass_kind: MassKind) -> Self {
        ShiftedConfig {
            m,
            shifts,
            mass_kind,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid side m = {} must be at least 2",
                self.m
            )));
        }
        if self.shifts.is_empty() {
            return Err(Error::InvalidParameter("shifts must be nonempty".into()));
        }
        if self.shifts.iter().any(|&s| s < 0.0) {
            return Err(Error::InvalidParameter("shifts must be nonnegative".into()));
        }
        if self.shifts.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter(
                "shifts must be nondecreasing".into(),
            ));
        }
        Ok(())
    }
}

/// Builds the sequence `K + sigma_k M` for every configured shift.
pub fn generate_shifted_sequence(cfg: &ShiftedConfig) -> Result<MatrixSequence> {
    cfg.validate()?;
    let m = cfg.m;
    let n = m * m;
    // 1/h^2 for h = 1/(m+1), computed exactly from the integer square.
    let inv_h2 = ((m + 1) * (m + 1)) as f64;

    let entries: Vec<SparseMatrix> = cfg
        .shifts
        .iter()
        .map(|&sigma| {
            let mut triplets = Vec::with_capacity(5 * n);
            for gj in 0..m {
                for gi in 0..m {
                    let p = gj * m + gi;
                    let mut diag = 4.0 * inv_h2;
                    match cfg.mass_kind {
                        MassKind::Diagonal => diag += sigma,
                        MassKind::Tridiagonal => diag += sigma * (2.0 / 3.0),
                    }
                    triplets.push((p, p, diag));
                    if gi + 1 < m {
                        let mut v = -inv_h2;
                        if cfg.mass_kind == MassKind::Tridiagonal {
                            v += sigma / 6.0;
                        }
                        triplets.push((p, p + 1, v));
                        triplets.push((p + 1, p, v));
                    }
                    if gj + 1 < m {
                        triplets.push((p, p + m, -inv_h2));
                        triplets.push((p + m, p, -inv_h2));
                    }
                }
            }
            SparseMatrix::from_triplets(n, n, &triplets).expect("stencil indices are in range")
        })
        .collect();

    MatrixSequence::with_label_prefix(entries, "shifted")
}
