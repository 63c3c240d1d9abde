//! Dense kernels: a row-major matrix type, Householder least squares with
//! column pivoting, LU with partial pivoting, and a banded LU used by the
//! sequence generators.
//!
//! The least-squares and LU routines back the per-column map solves and the
//! dense exact map. They are deliberately self-contained; the subproblems
//! they see are small (tens of rows and columns) or capped.

// Elimination and substitution loops carry dependencies between indexed
// elements; iterator forms would hide the access pattern.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Relative rank tolerance for the pivoted QR: a column whose remaining norm
/// falls at or below `RANK_REL_TOL * (largest column norm)` does not count
/// toward the rank.
pub const RANK_REL_TOL: f64 = 1e-12;

/// Relative singularity tolerance for LU factorizations: a pivot at or below
/// `SINGULAR_REL_TOL * max_abs(A)` aborts the factorization.
pub const SINGULAR_REL_TOL: f64 = 1e-14;

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        DenseMatrix {
            nrows,
            ncols,
            data: vec![0.0; nrows * ncols],
        }
    }

    /// Builds a matrix from nested row slices; all rows must share a length.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend_from_slice(row);
        }
        DenseMatrix { nrows, ncols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.set(i, i, 1.0);
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.ncols + j] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Number of entries that are not exactly zero.
    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|v| **v != 0.0).count()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    /// `self * x` for a vector `x`.
    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols);
        if self.ncols == 0 {
            return vec![0.0; self.nrows];
        }
        self.data
            .chunks_exact(self.ncols)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Outcome of a least-squares solve.
#[derive(Debug, Clone)]
pub struct LeastSquaresSolution {
    /// The minimizer; the minimum-norm one when the matrix is rank deficient.
    pub solution: Vec<f64>,
    /// Numerical rank detected during the pivoted factorization.
    pub rank: usize,
}

impl LeastSquaresSolution {
    pub fn is_rank_deficient(&self, ncols: usize) -> bool {
        self.rank < ncols
    }
}

/// Minimizes `||A x - b||_2` by Householder QR with column pivoting.
///
/// Full-rank problems take the ordinary triangular solve. When the detected
/// rank `r` is below the column count the trapezoidal factor is reduced from
/// the right as well (complete orthogonal decomposition), which yields the
/// minimum-norm minimizer instead of a basic solution.
pub fn least_squares(a: &DenseMatrix, b: &[f64]) -> LeastSquaresSolution {
    let nrows = a.nrows;
    let ncols = a.ncols;
    assert_eq!(b.len(), nrows, "rhs length must match row count");
    if nrows == 0 || ncols == 0 {
        return LeastSquaresSolution {
            solution: vec![0.0; ncols],
            rank: 0,
        };
    }

    let mut q = a.data.clone();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..ncols).collect();
    let steps = nrows.min(ncols);
    let mut taus = vec![0.0; steps];

    let col_norm = |q: &[f64], j: usize, from_row: usize| -> f64 {
        let mut s = 0.0;
        for i in from_row..nrows {
            let v = q[i * ncols + j];
            s += v * v;
        }
        s.sqrt()
    };

    let max_norm = (0..ncols)
        .map(|j| col_norm(&q, j, 0))
        .fold(0.0_f64, f64::max);
    if max_norm == 0.0 {
        return LeastSquaresSolution {
            solution: vec![0.0; ncols],
            rank: 0,
        };
    }
    let tol = RANK_REL_TOL * max_norm;

    let mut rank = 0;
    for k in 0..steps {
        // Pivot: bring the remaining column with the largest residual norm to
        // position k. Norms are recomputed exactly; the subproblems are small.
        let mut best = k;
        let mut best_norm = col_norm(&q, k, k);
        for j in (k + 1)..ncols {
            let nj = col_norm(&q, j, k);
            if nj > best_norm {
                best = j;
                best_norm = nj;
            }
        }
        if best_norm <= tol {
            break;
        }
        if best != k {
            for i in 0..nrows {
                q.swap(i * ncols + k, i * ncols + best);
            }
            perm.swap(k, best);
        }
        rank += 1;

        // Householder reflector annihilating column k below the diagonal.
        let x0 = q[k * ncols + k];
        let beta = if x0 >= 0.0 { -best_norm } else { best_norm };
        let tau = (beta - x0) / beta;
        let denom = x0 - beta;
        for i in (k + 1)..nrows {
            q[i * ncols + k] /= denom;
        }
        q[k * ncols + k] = beta;
        taus[k] = tau;

        // Apply the reflector to the trailing columns and the rhs.
        for j in (k + 1)..ncols {
            let mut s = q[k * ncols + j];
            for i in (k + 1)..nrows {
                s += q[i * ncols + k] * q[i * ncols + j];
            }
            s *= tau;
            q[k * ncols + j] -= s;
            for i in (k + 1)..nrows {
                let vik = q[i * ncols + k];
                q[i * ncols + j] -= s * vik;
            }
        }
        let mut s = rhs[k];
        for i in (k + 1)..nrows {
            s += q[i * ncols + k] * rhs[i];
        }
        s *= tau;
        rhs[k] -= s;
        for i in (k + 1)..nrows {
            rhs[i] -= s * q[i * ncols + k];
        }
    }

    let mut z = vec![0.0; ncols];
    if rank == ncols {
        // Ordinary back substitution on the triangular factor.
        for i in (0..rank).rev() {
            let mut s = rhs[i];
            for j in (i + 1)..rank {
                s -= q[i * ncols + j] * z[j];
            }
            z[i] = s / q[i * ncols + i];
        }
    } else if rank > 0 {
        // Reduce the trapezoidal block [T1 T2] (rank rows, ncols columns) to
        // [T 0] with reflectors applied from the right, acting on column k
        // together with the tail columns rank..ncols.
        let tail = ncols - rank;
        let mut tz_taus = vec![0.0; rank];
        for k in (0..rank).rev() {
            let x0 = q[k * ncols + k];
            let mut sigma = 0.0;
            for t in 0..tail {
                let v = q[k * ncols + rank + t];
                sigma += v * v;
            }
            if sigma == 0.0 {
                tz_taus[k] = 0.0;
                continue;
            }
            let normx = (x0 * x0 + sigma).sqrt();
            let beta = if x0 >= 0.0 { -normx } else { normx };
            let tau = (beta - x0) / beta;
            let denom = x0 - beta;
            for t in 0..tail {
                q[k * ncols + rank + t] /= denom;
            }
            q[k * ncols + k] = beta;
            tz_taus[k] = tau;
            for r in 0..k {
                let mut s = q[r * ncols + k];
                for t in 0..tail {
                    s += q[r * ncols + rank + t] * q[k * ncols + rank + t];
                }
                s *= tau;
                q[r * ncols + k] -= s;
                for t in 0..tail {
                    let vk = q[k * ncols + rank + t];
                    q[r * ncols + rank + t] -= s * vk;
                }
            }
        }
        // Back substitution on the square factor T.
        for i in (0..rank).rev() {
            let mut s = rhs[i];
            for j in (i + 1)..rank {
                s -= q[i * ncols + j] * z[j];
            }
            z[i] = s / q[i * ncols + i];
        }
        // Undo the right reflectors; the tail of z starts at zero, which is
        // what makes the result the minimum-norm solution.
        let tail = ncols - rank;
        for k in 0..rank {
            let tau = tz_taus[k];
            if tau == 0.0 {
                continue;
            }
            let mut s = z[k];
            for t in 0..tail {
                s += q[k * ncols + rank + t] * z[rank + t];
            }
            s *= tau;
            z[k] -= s;
            for t in 0..tail {
                let vk = q[k * ncols + rank + t];
                z[rank + t] -= s * vk;
            }
        }
    }

    let mut solution = vec![0.0; ncols];
    for (pos, &col) in perm.iter().enumerate() {
        solution[col] = z[pos];
    }
    LeastSquaresSolution { solution, rank }
}

/// LU factorization with partial pivoting, stored packed in `lu` with the
/// row permutation in `pivots`.
pub struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    pivots: Vec<usize>,
}

/// Factors a square matrix. Fails with [`Error::Singular`] when a pivot
/// falls at or below `SINGULAR_REL_TOL * max_abs(A)`.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactors> {
    if a.nrows != a.ncols {
        return Err(Error::NotSquare {
            context: "LU factorization",
            nrows: a.nrows,
            ncols: a.ncols,
        });
    }
    let n = a.nrows;
    let mut lu = a.data.clone();
    let mut pivots = vec![0usize; n];
    let tol = SINGULAR_REL_TOL * a.max_abs();

    for k in 0..n {
        let mut p = k;
        let mut pmax = lu[k * n + k].abs();
        for i in (k + 1)..n {
            let v = lu[i * n + k].abs();
            if v > pmax {
                pmax = v;
                p = i;
            }
        }
        if pmax <= tol {
            return Err(Error::Singular {
                col: k,
                pivot: pmax,
            });
        }
        pivots[k] = p;
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
        }
        let pivot = lu[k * n + k];
        for i in (k + 1)..n {
            let factor = lu[i * n + k] / pivot;
            lu[i * n + k] = factor;
            if factor != 0.0 {
                for j in (k + 1)..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
    }
    Ok(LuFactors { n, lu, pivots })
}

impl LuFactors {
    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk != 0.0 {
                for i in (k + 1)..n {
                    b[i] -= self.lu[i * n + k] * bk;
                }
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in (i + 1)..n {
                s -= self.lu[i * n + j] * b[j];
            }
            b[i] = s / self.lu[i * n + i];
        }
    }
}

/// Banded LU with partial pivoting, LAPACK-style band storage with `kl`
/// extra fill rows. Used for the Newton solves of the sequence generators,
/// whose stencil matrices have small bandwidth.
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    ldab: usize,
    /// Column-major band storage: entry `(i, j)` lives at
    /// `ab[j * ldab + kl + ku + i - j]`.
    ab: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    /// Factors a square sparse matrix after measuring its band extents.
    pub fn factor(a: &crate::sparse::SparseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                context: "banded LU",
                nrows: a.nrows(),
                ncols: a.ncols(),
            });
        }
        let n = a.nrows();
        let mut kl = 0usize;
        let mut ku = 0usize;
        for j in 0..n {
            let (rows, _) = a.col(j);
            for &i in rows {
                if i > j {
                    kl = kl.max(i - j);
                } else {
                    ku = ku.max(j - i);
                }
            }
        }
        let ldab = 2 * kl + ku + 1;
        let mut ab = vec![0.0; ldab * n];
        for j in 0..n {
            let (rows, vals) = a.col(j);
            for (&i, &v) in rows.iter().zip(vals) {
                ab[j * ldab + kl + ku + i - j] = v;
            }
        }
        let tol = SINGULAR_REL_TOL * a.max_abs();
        let mut pivots = vec![0usize; n];

        // Unblocked band factorization; fill from pivoting stays within the
        // extra kl rows at the top of each column.
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let mut jp = 0;
            let mut pmax = ab[j * ldab + kl + ku].abs();
            for p in 1..=km {
                let v = ab[j * ldab + kl + ku + p].abs();
                if v > pmax {
                    pmax = v;
                    jp = p;
                }
            }
            if pmax <= tol {
                return Err(Error::Singular {
                    col: j,
                    pivot: pmax,
                });
            }
            pivots[j] = j + jp;
            let jend = (j + kl + ku).min(n - 1);
            if jp != 0 {
                for c in j..=jend {
                    ab.swap(c * ldab + kl + ku + j - c, c * ldab + kl + ku + j + jp - c);
                }
            }
            if km > 0 {
                let pivot = ab[j * ldab + kl + ku];
                for p in 1..=km {
                    ab[j * ldab + kl + ku + p] /= pivot;
                }
                for c in (j + 1)..=jend {
                    let top = ab[c * ldab + kl + ku + j - c];
                    if top != 0.0 {
                        for p in 1..=km {
                            ab[c * ldab + kl + ku + j + p - c] -= ab[j * ldab + kl + ku + p] * top;
                        }
                    }
                }
            }
        }
        Ok(BandedLu {
            n,
            kl,
            ku,
            ldab,
            ab,
            pivots,
        })
    }

    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        let (kl, ku, ldab) = (self.kl, self.ku, self.ldab);
        for j in 0..n {
            let p = self.pivots[j];
            if p != j {
                b.swap(j, p);
            }
            let bj = b[j];
            if bj != 0.0 {
                let km = kl.min(n - 1 - j);
                for i in 1..=km {
                    b[j + i] -= self.ab[j * ldab + kl + ku + i] * bj;
                }
            }
        }
        for j in (0..n).rev() {
            b[j] /= self.ab[j * ldab + kl + ku];
            let bj = b[j];
            let lo = j.saturating_sub(kl + ku);
            for i in lo..j {
                b[i] -= self.ab[j * ldab + kl + ku + i - j] * bj;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn norm(v: &[f64]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Normal-equations oracle for well-conditioned problems, solved by an
    /// unpivoted Gaussian elimination written out here so it shares nothing
    /// with the production path.
    fn normal_equations(a: &DenseMatrix, b: &[f64]) -> Vec<f64> {
        let c = a.ncols();
        let mut g = vec![0.0; c * c];
        let mut rhs = vec![0.0; c];
        for p in 0..c {
            for q in 0..c {
                let mut s = 0.0;
                for i in 0..a.nrows() {
                    s += a.get(i, p) * a.get(i, q);
                }
                g[p * c + q] = s;
            }
            rhs[p] = (0..a.nrows()).map(|i| a.get(i, p) * b[i]).sum();
        }
        for k in 0..c {
            let mut pivot_row = k;
            for i in (k + 1)..c {
                if g[i * c + k].abs() > g[pivot_row * c + k].abs() {
                    pivot_row = i;
                }
            }
            if pivot_row != k {
                for j in 0..c {
                    g.swap(k * c + j, pivot_row * c + j);
                }
                rhs.swap(k, pivot_row);
            }
            for i in (k + 1)..c {
                let f = g[i * c + k] / g[k * c + k];
                for j in k..c {
                    g[i * c + j] -= f * g[k * c + j];
                }
                rhs[i] -= f * rhs[k];
            }
        }
        let mut x = vec![0.0; c];
        for i in (0..c).rev() {
            let mut s = rhs[i];
            for j in (i + 1)..c {
                s -= g[i * c + j] * x[j];
            }
            x[i] = s / g[i * c + i];
        }
        x
    }

    #[test]
    fn identity_returns_rhs() {
        let a = DenseMatrix::identity(4);
        let b = [1.0, -2.0, 0.5, 3.0];
        let ls = least_squares(&a, &b);
        assert_eq!(ls.rank, 4);
        for (x, e) in ls.solution.iter().zip(b.iter()) {
            assert!((x - e).abs() < 1e-14);
        }
    }

    #[test]
    fn overdetermined_mean() {
        let a = DenseMatrix::from_rows(&[&[1.0], &[1.0]]);
        let ls = least_squares(&a, &[1.0, 3.0]);
        assert_eq!(ls.rank, 1);
        assert!((ls.solution[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_normal_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let (r, c) = (15, 7);
            let mut a = DenseMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    a.set(i, j, rng.gen_range(-1.0..1.0));
                }
            }
            // Boost the diagonal so the Gram matrix stays well conditioned.
            for j in 0..c {
                a.set(j, j, a.get(j, j) + 3.0);
            }
            let b: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ls = least_squares(&a, &b);
            assert_eq!(ls.rank, c);
            let oracle = normal_equations(&a, &b);
            for (x, y) in ls.solution.iter().zip(oracle.iter()) {
                assert!((x - y).abs() < 1e-9, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn duplicated_columns_take_minimum_norm() {
        // x0 + x1 = 2 has minimizers along a line; the minimum-norm one
        // splits the weight evenly.
        let a = DenseMatrix::from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let ls = least_squares(&a, &[2.0, 2.0]);
        assert_eq!(ls.rank, 1);
        assert!((ls.solution[0] - 1.0).abs() < 1e-12);
        assert!((ls.solution[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficient_solution_is_a_minimum_norm_minimizer() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let (r, c, rank) = (9, 6, 3);
            let mut left = DenseMatrix::zeros(r, rank);
            let mut right = DenseMatrix::zeros(rank, c);
            for i in 0..r {
                for j in 0..rank {
                    left.set(i, j, rng.gen_range(-1.0..1.0));
                }
            }
            for i in 0..rank {
                for j in 0..c {
                    right.set(i, j, rng.gen_range(-1.0..1.0));
                }
            }
            let mut a = DenseMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    let mut s = 0.0;
                    for k in 0..rank {
                        s += left.get(i, k) * right.get(k, j);
                    }
                    a.set(i, j, s);
                }
            }
            let b: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ls = least_squares(&a, &b);
            assert_eq!(ls.rank, rank);

            // A least-squares minimizer satisfies A^T (A x - b) = 0.
            let fitted = a.mat_vec(&ls.solution);
            let scale = a.max_abs() * (norm(&b) + norm(&ls.solution));
            for p in 0..c {
                let g: f64 = (0..r).map(|i| a.get(i, p) * (fitted[i] - b[i])).sum();
                assert!(g.abs() <= 1e-10 * scale, "normality violated: {g:e}");
            }

            // The minimum-norm minimizer is orthogonal to null(A); the null
            // space of left * right is that of the full-row-rank factor
            // `right` and has basis vectors [-R1^-1 R2 e_t; e_t] for the
            // leading square block R1. The 3x3 solves are done right here.
            for t in 0..c - rank {
                let mut block = [[0.0; 3]; 3];
                let mut rhs = [0.0; 3];
                for i in 0..rank {
                    for j in 0..rank {
                        block[i][j] = right.get(i, j);
                    }
                    rhs[i] = -right.get(i, rank + t);
                }
                for k in 0..3 {
                    let mut p = k;
                    for i in (k + 1)..3 {
                        if block[i][k].abs() > block[p][k].abs() {
                            p = i;
                        }
                    }
                    block.swap(k, p);
                    rhs.swap(k, p);
                    for i in (k + 1)..3 {
                        let f = block[i][k] / block[k][k];
                        for j in k..3 {
                            block[i][j] -= f * block[k][j];
                        }
                        rhs[i] -= f * rhs[k];
                    }
                }
                let mut head = [0.0; 3];
                for i in (0..3).rev() {
                    let mut s = rhs[i];
                    for j in (i + 1)..3 {
                        s -= block[i][j] * head[j];
                    }
                    head[i] = s / block[i][i];
                }
                let mut null_vec = vec![0.0; c];
                null_vec[..rank].copy_from_slice(&head);
                null_vec[rank + t] = 1.0;
                let dot: f64 = ls
                    .solution
                    .iter()
                    .zip(null_vec.iter())
                    .map(|(x, v)| x * v)
                    .sum();
                let cosine = dot / (norm(&ls.solution) * norm(&null_vec));
                assert!(
                    cosine.abs() <= 1e-8,
                    "solution has null-space component, cosine = {cosine:e}"
                );
            }
        }
    }

    #[test]
    fn wide_consistent_system_takes_minimum_norm() {
        // One equation, two unknowns: x0 + 2 x1 = 5. The minimum-norm
        // solution lies along the row, x = 5/(1+4) * [1, 2] = [1, 2].
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0]]);
        let ls = least_squares(&a, &[5.0]);
        assert_eq!(ls.rank, 1);
        assert!((ls.solution[0] - 1.0).abs() < 1e-12);
        assert!((ls.solution[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let a = DenseMatrix::zeros(3, 2);
        let ls = least_squares(&a, &[1.0, 1.0, 1.0]);
        assert_eq!(ls.rank, 0);
        assert_eq!(ls.solution, vec![0.0, 0.0]);
    }

    #[test]
    fn lu_solves_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let n = 12;
            let mut a = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, rng.gen_range(-1.0..1.0));
                }
                a.set(i, i, a.get(i, i) + 4.0);
            }
            let x_true: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut b = a.mat_vec(&x_true);
            let lu = lu_factor(&a).unwrap();
            lu.solve_in_place(&mut b);
            for (x, e) in b.iter().zip(x_true.iter()) {
                assert!((x - e).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn lu_detects_singularity() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(lu_factor(&a), Err(Error::Singular { .. })));
    }

    #[test]
    fn banded_matches_dense_lu() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, band) in [(20usize, 1usize), (30, 3), (25, 5)] {
            let mut triplets = Vec::new();
            for i in 0..n {
                for j in i.saturating_sub(band)..(i + band + 1).min(n) {
                    let v = if i == j {
                        rng.gen_range(3.0..5.0)
                    } else {
                        rng.gen_range(-1.0..1.0)
                    };
                    triplets.push((i, j, v));
                }
            }
            let a = crate::sparse::SparseMatrix::from_triplets(n, n, &triplets).unwrap();
            let x_true: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let dense = a.to_dense().unwrap();
            let mut b = dense.mat_vec(&x_true);
            let banded = BandedLu::factor(&a).unwrap();
            banded.solve_in_place(&mut b);
            for (x, e) in b.iter().zip(x_true.iter()) {
                assert!((x - e).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn banded_pivots_when_needed() {
        // Tiny leading diagonal forces a row interchange.
        let a = crate::sparse::SparseMatrix::from_triplets(
            3,
            3,
            &[
                (0, 0, 1e-18),
                (0, 1, 1.0),
                (1, 0, 1.0),
                (1, 1, 1.0),
                (1, 2, 1.0),
                (2, 1, 1.0),
                (2, 2, 2.0),
            ],
        )
        .unwrap();
        let x_true = vec![1.0, 2.0, -1.0];
        let mut b = a.to_dense().unwrap().mat_vec(&x_true);
        let banded = BandedLu::factor(&a).unwrap();
        banded.solve_in_place(&mut b);
        for (x, e) in b.iter().zip(x_true.iter()) {
            assert!((x - e).abs() < 1e-10, "{x} vs {e}");
        }
    }
}
