//! Real sparse matrix in compressed sparse column (CSC) form.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::sparse::SparsityPattern;

/// Real sparse matrix in compressed sparse column form.
///
/// For the matrix
///
/// ```text
/// 1  .  2
/// .  .  3
/// 4  5  6
/// ```
///
/// the stored arrays are
///
/// ```text
/// col_ptr = [0, 2, 3, 6]
/// row_idx = [0, 2,   2,   0, 1, 2]
/// values  = [1, 4,   5,   2, 3, 6]
/// ```
///
/// Invariants, established by every constructor:
///
/// * `col_ptr` is non-decreasing with `col_ptr[0] == 0` and
///   `col_ptr[ncols] == row_idx.len() == values.len()`,
/// * within each column the row indices are strictly increasing and lie in
///   `[0, nrows)`,
/// * no explicitly stored zero values; entries that sum to exactly zero are
///   dropped at construction, so the stored pattern reflects numerical
///   support.
///
/// Instances are immutable after construction and safe to share across
/// threads read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds a matrix from `(row, col, value)` triplets.
    ///
    /// Triplets may come in any order; duplicates of the same position are
    /// summed. Entries whose final value is exactly zero are dropped.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: &[(usize, usize, f64)],
    ) -> Result<Self> {
        for &(row, col, _) in triplets {
            if row >= nrows || col >= ncols {
                return Err(Error::TripletOutOfRange {
                    row,
                    col,
                    nrows,
                    ncols,
                });
            }
        }

        // Bucket by column, then sort each column by row and merge duplicates.
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); ncols];
        for &(row, col, value) in triplets {
            cols[col].push((row, value));
        }

        let mut col_ptr = Vec::with_capacity(ncols + 1);
        let mut row_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        col_ptr.push(0);
        for entries in &mut cols {
            // Duplicates are summed in value order so the result does not
            // depend on the order the triplets came in.
            entries.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
            let mut i = 0;
            while i < entries.len() {
                let row = entries[i].0;
                let mut sum = 0.0;
                while i < entries.len() && entries[i].0 == row {
                    sum += entries[i].1;
                    i += 1;
                }
                if sum != 0.0 {
                    row_idx.push(row);
                    values.push(sum);
                }
            }
            col_ptr.push(row_idx.len());
        }

        Ok(SparseMatrix {
            nrows,
            ncols,
            col_ptr,
            row_idx,
            values,
        })
    }

    /// Builds a matrix from per-column `(row, value)` lists that are already
    /// sorted by strictly increasing row. Zero values are dropped.
    pub(crate) fn from_sorted_columns(
        nrows: usize,
        ncols: usize,
        columns: Vec<Vec<(usize, f64)>>,
    ) -> Self {
        debug_assert_eq!(columns.len(), ncols);
        let mut col_ptr = Vec::with_capacity(ncols + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for column in &columns {
            debug_assert!(column.windows(2).all(|w| w[0].0 < w[1].0));
            for &(row, value) in column {
                debug_assert!(row < nrows);
                if value != 0.0 {
                    row_idx.push(row);
                    values.push(value);
                }
            }
            col_ptr.push(row_idx.len());
        }
        SparseMatrix {
            nrows,
            ncols,
            col_ptr,
            row_idx,
            values,
        }
    }

    /// Converts a dense matrix, dropping exact zeros.
    pub fn from_dense(dense: &DenseMatrix) -> Self {
        let mut triplets = Vec::new();
        for i in 0..dense.nrows() {
            for j in 0..dense.ncols() {
                let v = dense.get(i, j);
                if v != 0.0 {
                    triplets.push((i, j, v));
                }
            }
        }
        // Indices are in range by construction.
        Self::from_triplets(dense.nrows(), dense.ncols(), &triplets).expect("in-range triplets")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// Row indices and values of column `j`.
    pub fn col(&self, j: usize) -> (&[usize], &[f64]) {
        let lo = self.col_ptr[j];
        let hi = self.col_ptr[j + 1];
        (&self.row_idx[lo..hi], &self.values[lo..hi])
    }

    /// Stored value at `(i, j)`, or `0.0` when the position is not stored.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (rows, vals) = self.col(j);
        match rows.binary_search(&i) {
            Ok(pos) => vals[pos],
            Err(_) => 0.0,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The sparsity pattern of the stored entries.
    pub fn pattern(&self) -> SparsityPattern {
        SparsityPattern::from_parts(
            self.nrows,
            self.ncols,
            self.col_ptr.clone(),
            self.row_idx.clone(),
        )
    }

    /// Frobenius norm of the stored values.
    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest absolute stored value, `0.0` for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Densifies the matrix. Refuses dimensions above `cap` because the
    /// result takes `nrows * ncols` doubles.
    pub fn to_dense_capped(&self, cap: usize) -> Result<DenseMatrix> {
        let n = self.nrows.max(self.ncols);
        if n > cap {
            return Err(Error::DenseCapExceeded { n, cap });
        }
        let mut out = DenseMatrix::zeros(self.nrows, self.ncols);
        for j in 0..self.ncols {
            let (rows, vals) = self.col(j);
            for (&i, &v) in rows.iter().zip(vals) {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// [`Self::to_dense_capped`] with the default cap
    /// [`crate::DEFAULT_DENSE_CAP`].
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        self.to_dense_capped(crate::DEFAULT_DENSE_CAP)
    }
}
