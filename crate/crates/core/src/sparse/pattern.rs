//! Boolean sparsity patterns in compressed-column form.

use crate::error::{Error, Result};

/// A set of `(row, col)` index pairs stored like a [`super::SparseMatrix`]
/// without values. Equality is structural: two patterns are equal exactly
/// when they contain the same index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityPattern {
    nrows: usize,
    ncols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
}

impl SparsityPattern {
    /// Builds a pattern from `(row, col)` pairs. Pairs may repeat and come in
    /// any order.
    pub fn from_entries(nrows: usize, ncols: usize, entries: &[(usize, usize)]) -> Result<Self> {
        for &(row, col) in entries {
            if row >= nrows || col >= ncols {
                return Err(Error::TripletOutOfRange {
                    row,
                    col,
                    nrows,
                    ncols,
                });
            }
        }
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); ncols];
        for &(row, col) in entries {
            cols[col].push(row);
        }
        for rows in &mut cols {
            rows.sort_unstable();
            rows.dedup();
        }
        Ok(Self::from_columns(nrows, ncols, cols))
    }

    /// Assembles a pattern from per-column row lists that are already sorted
    /// and duplicate-free.
    pub(crate) fn from_columns(nrows: usize, ncols: usize, columns: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(columns.len(), ncols);
        let mut col_ptr = Vec::with_capacity(ncols + 1);
        let mut row_idx = Vec::new();
        col_ptr.push(0);
        for column in &columns {
            debug_assert!(column.windows(2).all(|w| w[0] < w[1]));
            debug_assert!(column.iter().all(|&r| r < nrows));
            row_idx.extend_from_slice(column);
            col_ptr.push(row_idx.len());
        }
        SparsityPattern {
            nrows,
            ncols,
            col_ptr,
            row_idx,
        }
    }

    pub(crate) fn from_parts(
        nrows: usize,
        ncols: usize,
        col_ptr: Vec<usize>,
        row_idx: Vec<usize>,
    ) -> Self {
        SparsityPattern {
            nrows,
            ncols,
            col_ptr,
            row_idx,
        }
    }

    /// The `n x n` diagonal pattern.
    pub fn diagonal(n: usize) -> Self {
        SparsityPattern {
            nrows: n,
            ncols: n,
            col_ptr: (0..=n).collect(),
            row_idx: (0..n).collect(),
        }
    }

    /// The fully dense `n x n` pattern.
    pub fn full(n: usize) -> Self {
        let mut row_idx = Vec::with_capacity(n * n);
        for _ in 0..n {
            row_idx.extend(0..n);
        }
        SparsityPattern {
            nrows: n,
            ncols: n,
            col_ptr: (0..=n).map(|j| j * n).collect(),
            row_idx,
        }
    }

    /// The empty `nrows x ncols` pattern.
    pub fn empty(nrows: usize, ncols: usize) -> Self {
        SparsityPattern {
            nrows,
            ncols,
            col_ptr: vec![0; ncols + 1],
            row_idx: Vec::new(),
        }
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

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// Sorted row indices of column `j`.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.row_idx[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.col(j).binary_search(&i).is_ok()
    }

    /// True when every index of `self` is also an index of `other`.
    ///
    /// Errors when the dimensions differ.
    pub fn is_subset(&self, other: &SparsityPattern) -> Result<bool> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch {
                context: "pattern subset check",
                left_rows: self.nrows,
                left_cols: self.ncols,
                right_rows: other.nrows,
                right_cols: other.ncols,
            });
        }
        for j in 0..self.ncols {
            let mine = self.col(j);
            let theirs = other.col(j);
            // Two-pointer walk over sorted rows.
            let mut t = 0;
            for &row in mine {
                while t < theirs.len() && theirs[t] < row {
                    t += 1;
                }
                if t == theirs.len() || theirs[t] != row {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True when the full diagonal is present (square patterns only).
    pub fn has_full_diagonal(&self) -> bool {
        self.is_square() && (0..self.ncols).all(|j| self.contains(j, j))
    }
}
