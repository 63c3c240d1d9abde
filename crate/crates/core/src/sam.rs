//! Sparse approximate maps: per-column constrained least squares, the dense
//! exact map, and residual metrics.
//!
//! For a source matrix `A_k`, target `A_0` and pattern `S`, the map
//! `N = argmin ||A_k N - A_0||_F` subject to `S` decouples into one small
//! least-squares problem per column `j`:
//!
//! * `J` is the set of allowed rows of `N(:, j)` (column `j` of `S`),
//! * `I` is the union of the row supports of the `A_k` columns in `J`; rows
//!   outside `I` cannot be touched by `A_k * N(:, j)` and only add a constant
//!   to the objective, so the solve is restricted to `I`,
//! * the right-hand side is column `j` of the target restricted to `I`.
//!
//! Column solves share nothing and run in parallel under the `parallel`
//! feature; results are reduced in column order, so the output is identical
//! under any schedule.

use crate::dense::{self, DenseMatrix};
use crate::error::{Error, Result};
use crate::par;
use crate::sparse::{SparseMatrix, SparsityPattern};

/// Index sets defining the local least-squares problem of one column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnProblem {
    /// The column being solved.
    pub col: usize,
    /// Allowed row indices of the map column (column `col` of the pattern),
    /// sorted. These select columns of the source matrix.
    pub cols: Vec<usize>,
    /// Union of the row supports of the selected source columns, sorted.
    pub rows: Vec<usize>,
    /// Rows holding stored entries of the target column, sorted. Entries
    /// outside `rows` contribute a constant to the global residual.
    pub rhs_rows: Vec<usize>,
}

/// Per-column solve diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnDiag {
    pub col: usize,
    /// Rows of the local problem, `|I|`.
    pub rows_used: usize,
    /// Unknowns of the local problem, `|J|`.
    pub cols_used: usize,
    /// Euclidean norm of the local residual over the `I` rows.
    pub local_residual: f64,
    /// True when the local matrix had numerical rank below `|J|` and the
    /// minimum-norm solution was taken.
    pub rank_deficient: bool,
}

/// A computed sparse approximate map together with its quality metrics.
#[derive(Debug, Clone)]
pub struct SamResult {
    /// The map `N` with `pattern(N)` contained in the imposed pattern.
    pub map: SparseMatrix,
    /// `||A_k N - A_0||_F` accumulated from the per-column residuals.
    pub residual_fro: f64,
    /// `residual_fro / ||A_0||_F` (0 when both are zero).
    pub relative_residual: f64,
    /// Entry count of the imposed pattern.
    pub nnz_pattern: usize,
    /// Stored entries of the map; exact zeros are dropped, so this never
    /// exceeds `nnz_pattern`.
    pub nnz_map: usize,
    pub per_column: Vec<ColumnDiag>,
}

impl SamResult {
    /// Number of columns flagged rank deficient.
    pub fn rank_deficient_cols(&self) -> usize {
        self.per_column.iter().filter(|d| d.rank_deficient).count()
    }
}

/// Squared Frobenius norm accumulated column by column, matching the
/// grouping used for residual accumulation so that ratios of identical
/// quantities come out exact (a zero map yields a relative residual of
/// exactly 1).
fn column_frobenius_sq(a: &SparseMatrix) -> f64 {
    (0..a.ncols())
        .map(|j| a.col(j).1.iter().map(|v| v * v).sum::<f64>())
        .sum()
}

fn relative_of(residual_fro: f64, target_fro: f64) -> f64 {
    if target_fro > 0.0 {
        residual_fro / target_fro
    } else if residual_fro > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

fn check_same_square(
    source: &SparseMatrix,
    target: &SparseMatrix,
    context: &'static str,
) -> Result<usize> {
    if !source.is_square() {
        return Err(Error::NotSquare {
            context,
            nrows: source.nrows(),
            ncols: source.ncols(),
        });
    }
    if source.nrows() != target.nrows() || source.ncols() != target.ncols() {
        return Err(Error::DimensionMismatch {
            context,
            left_rows: source.nrows(),
            left_cols: source.ncols(),
            right_rows: target.nrows(),
            right_cols: target.ncols(),
        });
    }
    Ok(source.nrows())
}

/// Builds the index sets of column `j` for the given source, target and
/// pattern.
pub fn build_column_problem(
    source: &SparseMatrix,
    target: &SparseMatrix,
    pattern: &SparsityPattern,
    j: usize,
) -> ColumnProblem {
    let cols: Vec<usize> = pattern.col(j).to_vec();
    let mut rows: Vec<usize> = Vec::new();
    for &m in &cols {
        let (support, _) = source.col(m);
        rows.extend_from_slice(support);
    }
    rows.sort_unstable();
    rows.dedup();
    let (rhs_rows, _) = target.col(j);
    ColumnProblem {
        col: j,
        cols,
        rows,
        rhs_rows: rhs_rows.to_vec(),
    }
}

/// Outcome of one column solve; `global_residual_sq` covers all rows, not
/// just the local ones.
struct ColumnSolve {
    entries: Vec<(usize, f64)>,
    diag: ColumnDiag,
    global_residual_sq: f64,
}

fn solve_column(
    source: &SparseMatrix,
    target: &SparseMatrix,
    pattern: &SparsityPattern,
    j: usize,
) -> ColumnSolve {
    let problem = build_column_problem(source, target, pattern, j);
    let (target_rows, target_vals) = target.col(j);

    if problem.cols.is_empty() {
        // Empty pattern column: the map column is zero and the whole target
        // column is missed.
        let missed: f64 = target_vals.iter().map(|v| v * v).sum();
        return ColumnSolve {
            entries: Vec::new(),
            diag: ColumnDiag {
                col: j,
                rows_used: 0,
                cols_used: 0,
                local_residual: 0.0,
                rank_deficient: false,
            },
            global_residual_sq: missed,
        };
    }

    let nrows = problem.rows.len();
    let ncols = problem.cols.len();

    // Local matrix: source columns J restricted to rows I.
    let mut local = DenseMatrix::zeros(nrows, ncols);
    for (local_col, &m) in problem.cols.iter().enumerate() {
        let (support, vals) = source.col(m);
        for (&i, &v) in support.iter().zip(vals) {
            let local_row = problem
                .rows
                .binary_search(&i)
                .expect("I contains every support row");
            local.set(local_row, local_col, v);
        }
    }

    // Right-hand side restricted to I; entries outside I are constants in
    // the objective and feed the global residual directly.
    let mut rhs = vec![0.0; nrows];
    let mut missed_sq = 0.0;
    for (&i, &v) in target_rows.iter().zip(target_vals) {
        match problem.rows.binary_search(&i) {
            Ok(local_row) => rhs[local_row] = v,
            Err(_) => missed_sq += v * v,
        }
    }

    let ls = dense::least_squares(&local, &rhs);

    // Local residual evaluated explicitly from the computed solution.
    let fitted = local.mat_vec(&ls.solution);
    let local_residual_sq: f64 = fitted
        .iter()
        .zip(rhs.iter())
        .map(|(y, b)| (y - b) * (y - b))
        .sum();

    let entries: Vec<(usize, f64)> = problem
        .cols
        .iter()
        .zip(ls.solution.iter())
        .map(|(&row, &v)| (row, v))
        .collect();

    ColumnSolve {
        diag: ColumnDiag {
            col: j,
            rows_used: nrows,
            cols_used: ncols,
            local_residual: local_residual_sq.sqrt(),
            rank_deficient: ls.is_rank_deficient(ncols),
        },
        entries,
        global_residual_sq: local_residual_sq + missed_sq,
    }
}

/// Computes the sparse approximate map of `source` onto `target` under the
/// imposed `pattern`.
///
/// Rank-deficient local problems are solved in the minimum-norm sense and
/// flagged in the diagnostics rather than failing; columns whose pattern is
/// empty produce zero map columns.
pub fn compute_sam(
    source: &SparseMatrix,
    target: &SparseMatrix,
    pattern: &SparsityPattern,
) -> Result<SamResult> {
    let n = check_same_square(source, target, "sparse approximate map")?;
    if pattern.nrows() != n || pattern.ncols() != n {
        return Err(Error::DimensionMismatch {
            context: "sparse approximate map pattern",
            left_rows: n,
            left_cols: n,
            right_rows: pattern.nrows(),
            right_cols: pattern.ncols(),
        });
    }

    let solves = par::map_indexed(n, |j| solve_column(source, target, pattern, j));

    let mut columns = Vec::with_capacity(n);
    let mut per_column = Vec::with_capacity(n);
    let mut residual_sq = 0.0;
    for solve in solves {
        residual_sq += solve.global_residual_sq;
        per_column.push(solve.diag);
        columns.push(solve.entries);
    }
    let map = SparseMatrix::from_sorted_columns(n, n, columns);
    let residual_fro = residual_sq.sqrt();
    let relative_residual = relative_of(residual_fro, column_frobenius_sq(target).sqrt());

    Ok(SamResult {
        nnz_pattern: pattern.nnz(),
        nnz_map: map.nnz(),
        map,
        residual_fro,
        relative_residual,
        per_column,
    })
}

/// Dense exact map `source^-1 * target` by LU with partial pivoting on
/// multiple right-hand sides. Requires the dimension to stay within `cap`.
pub fn exact_map(source: &SparseMatrix, target: &SparseMatrix, cap: usize) -> Result<DenseMatrix> {
    let n = check_same_square(source, target, "exact map")?;
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let dense_source = source.to_dense_capped(cap)?;
    let factors = dense::lu_factor(&dense_source)?;
    let solved = par::map_indexed(n, |j| {
        let mut rhs = vec![0.0; n];
        let (rows, vals) = target.col(j);
        for (&i, &v) in rows.iter().zip(vals) {
            rhs[i] = v;
        }
        factors.solve_in_place(&mut rhs);
        rhs
    });
    let mut out = DenseMatrix::zeros(n, n);
    for (j, column) in solved.iter().enumerate() {
        for (i, &v) in column.iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Pattern of the entries of a dense map whose magnitude exceeds `drop_tol`.
pub fn sparsify_dense_map(map: &DenseMatrix, drop_tol: f64) -> SparsityPattern {
    let columns: Vec<Vec<usize>> = (0..map.ncols())
        .map(|j| {
            (0..map.nrows())
                .filter(|&i| map.get(i, j).abs() > drop_tol)
                .collect()
        })
        .collect();
    SparsityPattern::from_columns(map.nrows(), map.ncols(), columns)
}

/// Frobenius norm of `source * map - target` and its ratio to
/// `||target||_F`, evaluated column by column through the sparse structures
/// without forming the dense residual.
pub fn residual_norms(
    source: &SparseMatrix,
    target: &SparseMatrix,
    map: &SparseMatrix,
) -> Result<(f64, f64)> {
    if source.ncols() != map.nrows()
        || source.nrows() != target.nrows()
        || map.ncols() != target.ncols()
    {
        return Err(Error::DimensionMismatch {
            context: "residual norms",
            left_rows: source.nrows(),
            left_cols: source.ncols(),
            right_rows: map.nrows(),
            right_cols: map.ncols(),
        });
    }
    let column_sq = par::map_indexed(target.ncols(), |j| {
        // source * map(:, j) as a sorted accumulation.
        let (map_rows, map_vals) = map.col(j);
        let mut products: Vec<(usize, f64)> = Vec::new();
        for (&m, &coeff) in map_rows.iter().zip(map_vals) {
            let (rows, vals) = source.col(m);
            for (&i, &v) in rows.iter().zip(vals) {
                products.push((i, coeff * v));
            }
        }
        products.sort_by_key(|&(i, _)| i);

        let (target_rows, target_vals) = target.col(j);
        let mut sq = 0.0;
        let mut t = 0;
        let mut p = 0;
        while p < products.len() {
            let row = products[p].0;
            let mut sum = 0.0;
            while p < products.len() && products[p].0 == row {
                sum += products[p].1;
                p += 1;
            }
            while t < target_rows.len() && target_rows[t] < row {
                sq += target_vals[t] * target_vals[t];
                t += 1;
            }
            if t < target_rows.len() && target_rows[t] == row {
                let d = sum - target_vals[t];
                sq += d * d;
                t += 1;
            } else {
                sq += sum * sum;
            }
        }
        while t < target_rows.len() {
            sq += target_vals[t] * target_vals[t];
            t += 1;
        }
        sq
    });
    let residual_fro = column_sq.iter().sum::<f64>().sqrt();
    let relative = relative_of(residual_fro, column_frobenius_sq(target).sqrt());
    Ok((residual_fro, relative))
}
