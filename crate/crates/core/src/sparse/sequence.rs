//! Ordered sequences of equally sized square sparse matrices.

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// Whether consecutive patterns in a sequence are nested,
/// `pattern(entries[k-1])` a subset of `pattern(entries[k])` for all `k`.
///
/// Sequences whose patterns are nested admit a clean graph characterization
/// of the exact map, so the verdict is recorded alongside the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetChain {
    /// Not checked yet.
    Unchecked,
    /// The chain of inclusions holds for every consecutive pair.
    Holds,
    /// First index `k` where `pattern(entries[k-1])` is not a subset of
    /// `pattern(entries[k])`.
    ViolatedAt(usize),
}

/// An ordered list of square sparse matrices of identical dimension.
#[derive(Debug, Clone)]
pub struct MatrixSequence {
    entries: Vec<SparseMatrix>,
    labels: Vec<String>,
    subset_chain: SubsetChain,
}

impl MatrixSequence {
    /// Builds a sequence, validating that it is nonempty and that every
    /// matrix is square with the same dimension.
    pub fn new(entries: Vec<SparseMatrix>, labels: Vec<String>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter(
                "matrix sequence must be nonempty".into(),
            ));
        }
        if labels.len() != entries.len() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} matrices",
                labels.len(),
                entries.len()
            )));
        }
        let n = entries[0].nrows();
        for (k, a) in entries.iter().enumerate() {
            if !a.is_square() {
                return Err(Error::NotSquare {
                    context: "matrix sequence entry",
                    nrows: a.nrows(),
                    ncols: a.ncols(),
                });
            }
            if a.nrows() != n {
                return Err(Error::InvalidParameter(format!(
                    "sequence entry {k} is {}x{} but entry 0 is {n}x{n}",
                    a.nrows(),
                    a.ncols()
                )));
            }
        }
        Ok(MatrixSequence {
            entries,
            labels,
            subset_chain: SubsetChain::Unchecked,
        })
    }

    /// Builds a sequence labeling entries `prefix_000`, `prefix_001`, ...
    pub fn with_label_prefix(entries: Vec<SparseMatrix>, prefix: &str) -> Result<Self> {
        let labels = (0..entries.len())
            .map(|k| format!("{prefix}_{k:03}"))
            .collect();
        Self::new(entries, labels)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dimension shared by all entries.
    pub fn dim(&self) -> usize {
        self.entries[0].nrows()
    }

    pub fn entry(&self, k: usize) -> &SparseMatrix {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[SparseMatrix] {
        &self.entries
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The most recent [`Self::check_subset_chain`] verdict.
    pub fn subset_chain(&self) -> SubsetChain {
        self.subset_chain
    }

    /// Checks the chain of pattern inclusions over consecutive entries,
    /// stores the verdict and returns it.
    pub fn check_subset_chain(&mut self) -> SubsetChain {
        let mut verdict = SubsetChain::Holds;
        for k in 1..self.entries.len() {
            let prev = self.entries[k - 1].pattern();
            let next = self.entries[k].pattern();
            // Dimensions are equal by construction.
            if !prev.is_subset(&next).expect("equal dimensions") {
                verdict = SubsetChain::ViolatedAt(k);
                break;
            }
        }
        self.subset_chain = verdict;
        verdict
    }
}
