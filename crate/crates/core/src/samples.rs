//! Small fixed matrices used in documentation and tests.

use crate::sparse::SparseMatrix;

/// A 7x7 `(target, source)` pair whose sparsity patterns are nested,
/// `S(target)` a subset of `S(source)`, and whose source adjacency graph is
/// strongly connected, so the transitive closure of the source pattern is
/// fully dense.
///
/// The support is, row by row (`1` marks a stored entry):
///
/// ```text
/// target            source
/// 1 1 . 1 . . 1     1 1 . 1 . . 1
/// . 1 1 . . . 1     . 1 1 . . . 1
/// . . 1 . 1 1 .     . . 1 . 1 1 .
/// . . . 1 1 . 1     . . . 1 1 . 1
/// . . . . 1 . 1     1 . 1 . 1 . 1
/// . . . . . 1 1     . . . . . 1 1
/// . . . . . . 1     1 . . . . 1 1
/// ```
///
/// The source adds entries at (4,0), (4,2), (6,0) and (6,5). Values are fixed
/// one-decimal numbers with a dominant diagonal; the source is well
/// conditioned and the exact map `source^-1 * target` has no entry smaller
/// than 8e-3 in magnitude, so pattern comparisons against the transitive
/// closure are far away from any drop tolerance.
pub fn worked_pair() -> (SparseMatrix, SparseMatrix) {
    let target = SparseMatrix::from_triplets(
        7,
        7,
        &[
            (0, 0, 14.5),
            (0, 1, 5.0),
            (0, 3, 6.4),
            (0, 6, 0.9),
            (1, 1, 15.4),
            (1, 2, 8.8),
            (1, 6, 2.7),
            (2, 2, 19.8),
            (2, 4, 3.1),
            (2, 5, 5.2),
            (3, 3, 17.4),
            (3, 4, 2.5),
            (3, 6, 4.2),
            (4, 4, 17.0),
            (4, 6, 2.9),
            (5, 5, 19.8),
            (5, 6, 1.0),
            (6, 6, 19.5),
        ],
    )
    .expect("fixed triplets are in range");
    let source = SparseMatrix::from_triplets(
        7,
        7,
        &[
            (0, 0, 10.9),
            (0, 1, 8.8),
            (0, 3, 6.7),
            (0, 6, 8.8),
            (1, 1, 14.2),
            (1, 2, 4.9),
            (1, 6, 7.5),
            (2, 2, 10.2),
            (2, 4, 7.1),
            (2, 5, 2.4),
            (3, 3, 12.4),
            (3, 4, 6.0),
            (3, 6, 8.5),
            (4, 0, 7.5),
            (4, 2, 6.7),
            (4, 4, 15.2),
            (4, 6, 1.8),
            (5, 5, 12.1),
            (5, 6, 6.5),
            (6, 0, 7.4),
            (6, 5, 6.4),
            (6, 6, 17.8),
        ],
    )
    .expect("fixed triplets are in range");
    (target, source)
}
