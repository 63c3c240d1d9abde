//! Nonlinear 2D convection-diffusion Newton sequence.
//!
//! The PDE on the unit square is
//!
//! ```text
//! -div((eta + gamma u^2) grad u) + r u_x + s u_y + t u = f
//! ```
//!
//! with Dirichlet data `u = 0.2 + y (1 - y^2)` on the left edge and zero on
//! the other three. Interior nodes form an `m x m` grid with spacing
//! `h = 1/(m+1)`; the diffusion term is discretized in conservative form
//! with arithmetic-mean half-point coefficients and the convection terms
//! with central differences, giving the classic five-point stencil with
//! `5 m^2 - 4 m` stored Jacobian entries.
//!
//! A damped Newton iteration from `u = 0` with an Armijo backtracking line
//! search on `||F||^2` emits the Jacobian of every iterate until
//! `||F||_2` drops below the tolerance; those Jacobians form the sequence.

use crate::dense::BandedLu;
use crate::error::{Error, Result};
use crate::sparse::{MatrixSequence, SparseMatrix};

/// Configuration of the convection-diffusion generator.
#[derive(Debug, Clone)]
pub struct Cd2dConfig {
    /// Interior grid points per side; the matrices have dimension `m * m`.
    pub m: usize,
    /// Constant part of the diffusion coefficient.
    pub eta: f64,
    /// Coefficient of the `u^2` part of the diffusion coefficient.
    pub gamma: f64,
    /// Convection speed along x.
    pub conv_x: f64,
    /// Convection speed along y.
    pub conv_y: f64,
    /// Reaction coefficient.
    pub reaction: f64,
    /// Constant forcing term.
    pub forcing: f64,
    /// Newton stops once `||F||_2` falls below this.
    pub newton_tol: f64,
    /// Maximum number of Newton steps.
    pub max_newton: usize,
    /// Armijo sufficient-decrease constant.
    pub armijo_c: f64,
    /// Step-halving factor of the backtracking line search.
    pub backtrack_factor: f64,
}

impl Cd2dConfig {
    /// The standard coefficient set: `eta = 0.1`, `gamma = 1`, unit
    /// convection, no reaction or forcing.
    pub fn new(m: usize) -> Self {
        Cd2dConfig {
            m,
            eta: 0.1,
            gamma: 1.0,
            conv_x: 1.0,
            conv_y: 1.0,
            reaction: 0.0,
            forcing: 0.0,
            newton_tol: 1e-8,
            max_newton: 100,
            armijo_c: 1e-4,
            backtrack_factor: 0.5,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid side m = {} must be at least 2",
                self.m
            )));
        }
        if self.eta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eta = {} must be positive",
                self.eta
            )));
        }
        if self.newton_tol <= 0.0 {
            return Err(Error::InvalidParameter(
                "newton_tol must be positive".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.backtrack_factor) || self.backtrack_factor <= 0.0 {
            return Err(Error::InvalidParameter(
                "backtrack_factor must lie in (0, 1)".into(),
            ));
        }
        Ok(())
    }
}

/// Dirichlet boundary value at a point of the boundary.
fn boundary_value(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.2 + y * (1.0 - y * y)
    } else {
        0.0
    }
}

/// Evaluates the discrete residual `F(u)` with an arbitrary boundary
/// function; the public entry point fixes the standard boundary data.
pub(crate) fn residual_with_bc(
    u: &[f64],
    cfg: &Cd2dConfig,
    bc: &dyn Fn(f64, f64) -> f64,
) -> Vec<f64> {
    let m = cfg.m;
    assert_eq!(u.len(), m * m, "state length must be m^2");
    let h = 1.0 / (m as f64 + 1.0);
    let inv_h2 = ((m + 1) * (m + 1)) as f64;
    let inv_2h = 0.5 * (m as f64 + 1.0);
    let kappa = |v: f64| cfg.eta + cfg.gamma * v * v;
    // Grid value at 1-based grid coordinates, interior or boundary.
    let value = |gi: isize, gj: isize| -> f64 {
        if gi >= 1 && gi <= m as isize && gj >= 1 && gj <= m as isize {
            u[(gj as usize - 1) * m + (gi as usize - 1)]
        } else {
            bc(gi as f64 * h, gj as f64 * h)
        }
    };

    let mut out = vec![0.0; m * m];
    for gj in 1..=m as isize {
        for gi in 1..=m as isize {
            let p = (gj as usize - 1) * m + (gi as usize - 1);
            let up = value(gi, gj);
            let ue = value(gi + 1, gj);
            let uw = value(gi - 1, gj);
            let un = value(gi, gj + 1);
            let us = value(gi, gj - 1);
            let kp = kappa(up);
            let ke = 0.5 * (kp + kappa(ue));
            let kw = 0.5 * (kp + kappa(uw));
            let kn = 0.5 * (kp + kappa(un));
            let ks = 0.5 * (kp + kappa(us));
            let diffusion =
                (ke * (up - ue) + kw * (up - uw) + kn * (up - un) + ks * (up - us)) * inv_h2;
            let convection = cfg.conv_x * (ue - uw) * inv_2h + cfg.conv_y * (un - us) * inv_2h;
            out[p] = diffusion + convection + cfg.reaction * up - cfg.forcing;
        }
    }
    out
}

/// Discrete residual `F(u)` of the interior unknowns with the standard
/// boundary data folded in.
pub fn assemble_cd2d_residual(u: &[f64], cfg: &Cd2dConfig) -> Vec<f64> {
    residual_with_bc(u, cfg, &boundary_value)
}

/// Analytic Jacobian of [`assemble_cd2d_residual`]. The derivative of the
/// diffusion coefficient, `d kappa / d u = 2 gamma u`, contributes to both
/// the diagonal and the neighbor entries.
pub fn assemble_cd2d_jacobian(u: &[f64], cfg: &Cd2dConfig) -> SparseMatrix {
    let m = cfg.m;
    assert_eq!(u.len(), m * m, "state length must be m^2");
    let n = m * m;
    let h = 1.0 / (m as f64 + 1.0);
    let inv_h2 = ((m + 1) * (m + 1)) as f64;
    let inv_2h = 0.5 * (m as f64 + 1.0);
    let kappa = |v: f64| cfg.eta + cfg.gamma * v * v;
    let value = |gi: isize, gj: isize| -> f64 {
        if gi >= 1 && gi <= m as isize && gj >= 1 && gj <= m as isize {
            u[(gj as usize - 1) * m + (gi as usize - 1)]
        } else {
            boundary_value(gi as f64 * h, gj as f64 * h)
        }
    };

    let mut triplets = Vec::with_capacity(5 * n);
    for gj in 1..=m as isize {
        for gi in 1..=m as isize {
            let p = (gj as usize - 1) * m + (gi as usize - 1);
            let up = value(gi, gj);
            // (di, dj, convection derivative sign times speed)
            let neighbors = [
                (1isize, 0isize, cfg.conv_x * inv_2h),
                (-1, 0, -cfg.conv_x * inv_2h),
                (0, 1, cfg.conv_y * inv_2h),
                (0, -1, -cfg.conv_y * inv_2h),
            ];
            let mut diag = cfg.reaction;
            for (di, dj, conv) in neighbors {
                let (ni, nj) = (gi + di, gj + dj);
                let un = value(ni, nj);
                let k_half = 0.5 * (kappa(up) + kappa(un));
                diag += (k_half + cfg.gamma * up * (up - un)) * inv_h2;
                let interior = ni >= 1 && ni <= m as isize && nj >= 1 && nj <= m as isize;
                if interior {
                    let q = (nj as usize - 1) * m + (ni as usize - 1);
                    let off = (-k_half + cfg.gamma * un * (up - un)) * inv_h2 + conv;
                    triplets.push((p, q, off));
                }
            }
            triplets.push((p, p, diag));
        }
    }
    SparseMatrix::from_triplets(n, n, &triplets).expect("stencil indices are in range")
}

/// Result of running the Newton generator.
#[derive(Debug, Clone)]
pub struct Cd2dOutcome {
    /// Jacobians of the Newton iterates, in iteration order.
    pub sequence: MatrixSequence,
    /// `||F||_2` at every iterate, including the final accepted one.
    pub fnorm_history: Vec<f64>,
    /// False when the iteration stopped at `max_newton` instead of at the
    /// tolerance; the sequence is the partial one observed so far.
    pub converged: bool,
}

/// Runs damped Newton from `u = 0`, collecting the Jacobian of every iterate
/// visited before convergence.
///
/// The Newton systems are solved by a banded LU (the stencil gives bandwidth
/// `m`), and steps are damped by backtracking until the Armijo condition on
/// `||F||^2` holds. A step shrinking below 1e-12 aborts with
/// [`Error::LineSearchFailed`].
pub fn generate_cd2d_sequence(cfg: &Cd2dConfig) -> Result<Cd2dOutcome> {
    cfg.validate()?;
    let n = cfg.m * cfg.m;
    let mut u = vec![0.0; n];
    let mut jacobians = Vec::new();
    let mut fnorm_history = Vec::new();
    let mut converged = false;

    const MIN_STEP: f64 = 1e-12;

    loop {
        let f = assemble_cd2d_residual(&u, cfg);
        let fnorm_sq: f64 = f.iter().map(|v| v * v).sum();
        let fnorm = fnorm_sq.sqrt();
        fnorm_history.push(fnorm);
        if fnorm < cfg.newton_tol {
            converged = true;
            break;
        }
        if jacobians.len() >= cfg.max_newton {
            break;
        }

        let jacobian = assemble_cd2d_jacobian(&u, cfg);
        let solver = BandedLu::factor(&jacobian)?;
        jacobians.push(jacobian);

        let mut delta: Vec<f64> = f.iter().map(|v| -v).collect();
        solver.solve_in_place(&mut delta);

        let mut alpha = 1.0;
        let step = jacobians.len();
        loop {
            let trial: Vec<f64> = u
                .iter()
                .zip(delta.iter())
                .map(|(ui, di)| ui + alpha * di)
                .collect();
            let trial_sq: f64 = assemble_cd2d_residual(&trial, cfg)
                .iter()
                .map(|v| v * v)
                .sum();
            if trial_sq <= (1.0 - 2.0 * cfg.armijo_c * alpha) * fnorm_sq {
                u = trial;
                break;
            }
            alpha *= cfg.backtrack_factor;
            if alpha < MIN_STEP {
                return Err(Error::LineSearchFailed { step, fnorm });
            }
        }
    }

    let sequence = MatrixSequence::with_label_prefix(jacobians, "cd2d")?;
    Ok(Cd2dOutcome {
        sequence,
        fnorm_history,
        converged,
    })
}
