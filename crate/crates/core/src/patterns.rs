//! A-priori sparsity pattern strategies.
//!
//! Three sparsification rules derive a pattern from the values of a source
//! matrix `A`, each forcing the full diagonal into the result:
//!
//! * global threshold: keep off-diagonal `(i, j)` when the diagonally scaled
//!   magnitude of `A_ij` exceeds `thresh`,
//! * column threshold: keep `(i, j)` when `|A_ij|` exceeds
//!   `(1 - tau) * max_i |A_ij|` within its column,
//! * fixed per-column count: keep the `lfil` largest-magnitude entries of
//!   each column.
//!
//! On top of a sparsified pattern, neighbor-level expansion takes boolean
//! powers of the pattern (level `l` is the power `l + 1`), and
//! [`transitive_closure`] iterates squaring to the reachability fixed point.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par;
use crate::sparse::{SparseMatrix, SparsityPattern};

/// How the global threshold rule scales entries before comparing against
/// `thresh`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingMode {
    /// Two-sided scaling by the inverse square roots of the diagonal
    /// magnitudes, so the scaled matrix has unit-magnitude diagonal. This is
    /// the default.
    Normalized,
    /// Two-sided scaling by the square roots of the diagonal magnitudes
    /// themselves, which amplifies rather than normalizes large diagonals.
    /// Kept selectable for auditing against the normalized mode.
    Literal,
}

/// One of the three value-based sparsification rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SparsificationStrategy {
    GlobalThreshold { thresh: f64, scaling: ScalingMode },
    ColumnThreshold { tau: f64 },
    FixedNnz { lfil: usize },
}

impl SparsificationStrategy {
    /// Applies the rule to a square matrix.
    pub fn apply(&self, a: &SparseMatrix) -> Result<SparsityPattern> {
        match *self {
            SparsificationStrategy::GlobalThreshold { thresh, scaling } => {
                sparsify_global(a, thresh, scaling)
            }
            SparsificationStrategy::ColumnThreshold { tau } => sparsify_column_threshold(a, tau),
            SparsificationStrategy::FixedNnz { lfil } => sparsify_lfil(a, lfil),
        }
    }
}

/// Which matrix of a (source, target) pair a recipe reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternSource {
    /// The matrix being mapped, `A_k`.
    SourceMatrix,
    /// The matrix mapped onto, typically the first of the sequence.
    TargetMatrix,
}

/// A full pattern prescription: an optional sparsification rule, the matrix
/// it reads, and a neighbor level.
///
/// Recipes parse from compact specs used by configs and the command line:
///
/// ```text
/// target                 pattern of the target matrix as-is
/// target@level1          boolean square of the target pattern
/// global:0.01            global threshold 0.01, normalized scaling
/// global:0.01:literal    global threshold 0.01, literal scaling
/// col:0.8@level1         column threshold tau = 0.8, then one expansion
/// lfil:5@level2          keep 5 entries per column, then two expansions
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct PatternRecipe {
    pub strategy: Option<SparsificationStrategy>,
    pub source: PatternSource,
    pub level: usize,
}

impl PatternRecipe {
    /// Builds the pattern this recipe prescribes for a (source, target) pair.
    ///
    /// Level 0 is the base pattern itself; level `l >= 1` goes through
    /// [`expand_level`], which enforces the diagonal before powering.
    pub fn build(&self, source: &SparseMatrix, target: &SparseMatrix) -> Result<SparsityPattern> {
        let matrix = match self.source {
            PatternSource::SourceMatrix => source,
            PatternSource::TargetMatrix => target,
        };
        let base = match &self.strategy {
            Some(strategy) => strategy.apply(matrix)?,
            None => matrix.pattern(),
        };
        if self.level == 0 {
            Ok(base)
        } else {
            expand_level(&base, self.level)
        }
    }
}

impl FromStr for PatternRecipe {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidParameter(format!("recipe '{spec}': {msg}"));
        let (head, level) = match spec.split_once('@') {
            None => (spec, 0),
            Some((head, modifier)) => {
                let level = modifier
                    .strip_prefix("level")
                    .and_then(|digits| digits.parse::<usize>().ok())
                    .ok_or_else(|| {
                        bad(format!("bad modifier '@{modifier}', expected '@level<n>'"))
                    })?;
                (head, level)
            }
        };
        let mut parts = head.split(':');
        let kind = parts.next().unwrap_or("");
        let recipe = match kind {
            "target" => {
                if parts.next().is_some() {
                    return Err(bad("'target' takes no parameters".into()));
                }
                PatternRecipe {
                    strategy: None,
                    source: PatternSource::TargetMatrix,
                    level,
                }
            }
            "global" => {
                let thresh: f64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("expected 'global:<thresh>[:literal]'".into()))?;
                let scaling = match parts.next() {
                    None => ScalingMode::Normalized,
                    Some("literal") => ScalingMode::Literal,
                    Some(other) => return Err(bad(format!("unknown scaling '{other}'"))),
                };
                if thresh < 0.0 {
                    return Err(bad("thresh must be nonnegative".into()));
                }
                PatternRecipe {
                    strategy: Some(SparsificationStrategy::GlobalThreshold { thresh, scaling }),
                    source: PatternSource::SourceMatrix,
                    level,
                }
            }
            "col" => {
                let tau: f64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("expected 'col:<tau>'".into()))?;
                if !(0.0..=1.0).contains(&tau) {
                    return Err(bad(format!("tau = {tau} outside [0, 1]")));
                }
                PatternRecipe {
                    strategy: Some(SparsificationStrategy::ColumnThreshold { tau }),
                    source: PatternSource::SourceMatrix,
                    level,
                }
            }
            "lfil" => {
                let lfil: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("expected 'lfil:<count>'".into()))?;
                if lfil == 0 {
                    return Err(bad("lfil must be at least 1".into()));
                }
                PatternRecipe {
                    strategy: Some(SparsificationStrategy::FixedNnz { lfil }),
                    source: PatternSource::SourceMatrix,
                    level,
                }
            }
            other => {
                return Err(bad(format!(
                    "unknown strategy '{other}', expected target, global, col or lfil"
                )))
            }
        };
        if let Some(extra) = parts.next() {
            return Err(bad(format!("trailing component ':{extra}'")));
        }
        Ok(recipe)
    }
}

impl fmt::Display for PatternRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.strategy {
            None => write!(f, "target")?,
            Some(SparsificationStrategy::GlobalThreshold { thresh, scaling }) => {
                write!(f, "global:{thresh}")?;
                if *scaling == ScalingMode::Literal {
                    write!(f, ":literal")?;
                }
            }
            Some(SparsificationStrategy::ColumnThreshold { tau }) => write!(f, "col:{tau}")?,
            Some(SparsificationStrategy::FixedNnz { lfil }) => write!(f, "lfil:{lfil}")?,
        }
        if self.level > 0 {
            write!(f, "@level{}", self.level)?;
        }
        Ok(())
    }
}

fn require_square(a: &SparseMatrix, context: &'static str) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            context,
            nrows: a.nrows(),
            ncols: a.ncols(),
        });
    }
    Ok(())
}

/// Global threshold sparsification.
///
/// Keeps every diagonal index plus each off-diagonal `(i, j)` whose scaled
/// magnitude `s_i * |A_ij| * s_j` exceeds `thresh`, where `s_i` is
/// `1/sqrt(d_i)` in [`ScalingMode::Normalized`] and `sqrt(d_i)` in
/// [`ScalingMode::Literal`], with `d_i = |A_ii|` when nonzero and 1
/// otherwise.
pub fn sparsify_global(
    a: &SparseMatrix,
    thresh: f64,
    scaling: ScalingMode,
) -> Result<SparsityPattern> {
    require_square(a, "global threshold sparsification")?;
    if thresh < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "thresh = {thresh} must be nonnegative"
        )));
    }
    let n = a.nrows();
    let mut scale = vec![1.0; n];
    for (i, s) in scale.iter_mut().enumerate() {
        let d = a.get(i, i).abs();
        let d = if d > 0.0 { d } else { 1.0 };
        *s = match scaling {
            ScalingMode::Normalized => 1.0 / d.sqrt(),
            ScalingMode::Literal => d.sqrt(),
        };
    }
    let columns: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let (rows, vals) = a.col(j);
            let mut keep: Vec<usize> = rows
                .iter()
                .zip(vals)
                .filter(|&(&i, &v)| i != j && scale[i] * v.abs() * scale[j] > thresh)
                .map(|(&i, _)| i)
                .collect();
            let pos = keep.partition_point(|&i| i < j);
            keep.insert(pos, j);
            keep
        })
        .collect();
    Ok(SparsityPattern::from_columns(n, n, columns))
}

/// Column threshold sparsification: per column `j`, keeps the diagonal plus
/// every entry with `|A_ij| > (1 - tau) * max_i |A_ij|`, the max taken over
/// the stored entries of the column.
pub fn sparsify_column_threshold(a: &SparseMatrix, tau: f64) -> Result<SparsityPattern> {
    require_square(a, "column threshold sparsification")?;
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidParameter(format!(
            "tau = {tau} outside [0, 1]"
        )));
    }
    let n = a.nrows();
    let columns: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let (rows, vals) = a.col(j);
            let col_max = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            let cutoff = (1.0 - tau) * col_max;
            let mut keep: Vec<usize> = rows
                .iter()
                .zip(vals)
                .filter(|&(&i, &v)| i != j && v.abs() > cutoff)
                .map(|(&i, _)| i)
                .collect();
            let pos = keep.partition_point(|&i| i < j);
            keep.insert(pos, j);
            keep
        })
        .collect();
    Ok(SparsityPattern::from_columns(n, n, columns))
}

/// Fixed per-column count: keeps the `lfil` largest-magnitude stored entries
/// of each column plus the diagonal index. Columns with at most `lfil`
/// stored entries keep all of them; no new off-diagonal entries are ever
/// introduced. Ties in magnitude resolve toward the smaller row index.
pub fn sparsify_lfil(a: &SparseMatrix, lfil: usize) -> Result<SparsityPattern> {
    require_square(a, "fixed-count sparsification")?;
    if lfil == 0 {
        return Err(Error::InvalidParameter("lfil must be at least 1".into()));
    }
    let n = a.nrows();
    let columns: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let (rows, vals) = a.col(j);
            let mut order: Vec<usize> = (0..rows.len()).collect();
            order.sort_by(|&p, &q| {
                vals[q]
                    .abs()
                    .partial_cmp(&vals[p].abs())
                    .expect("stored values are finite")
                    .then(rows[p].cmp(&rows[q]))
            });
            let mut keep: Vec<usize> = order.into_iter().take(lfil).map(|p| rows[p]).collect();
            keep.sort_unstable();
            if keep.binary_search(&j).is_err() {
                let pos = keep.partition_point(|&i| i < j);
                keep.insert(pos, j);
            }
            keep
        })
        .collect();
    Ok(SparsityPattern::from_columns(n, n, columns))
}

/// Boolean pattern product: `(i, j)` is present in the result exactly when
/// some `m` has `(i, m)` in `p` and `(m, j)` in `q`.
pub fn pattern_multiply(p: &SparsityPattern, q: &SparsityPattern) -> Result<SparsityPattern> {
    if p.ncols() != q.nrows() {
        return Err(Error::DimensionMismatch {
            context: "pattern product",
            left_rows: p.nrows(),
            left_cols: p.ncols(),
            right_rows: q.nrows(),
            right_cols: q.ncols(),
        });
    }
    let columns = par::map_indexed(q.ncols(), |j| {
        let mut rows: Vec<usize> = Vec::new();
        for &m in q.col(j) {
            rows.extend_from_slice(p.col(m));
        }
        rows.sort_unstable();
        rows.dedup();
        rows
    });
    Ok(SparsityPattern::from_columns(p.nrows(), q.ncols(), columns))
}

/// Adds the full diagonal to a square pattern.
pub fn union_with_diagonal(p: &SparsityPattern) -> Result<SparsityPattern> {
    if !p.is_square() {
        return Err(Error::NotSquare {
            context: "diagonal union",
            nrows: p.nrows(),
            ncols: p.ncols(),
        });
    }
    let n = p.ncols();
    let columns: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let rows = p.col(j);
            if rows.binary_search(&j).is_ok() {
                rows.to_vec()
            } else {
                let mut rows = rows.to_vec();
                let pos = rows.partition_point(|&i| i < j);
                rows.insert(pos, j);
                rows
            }
        })
        .collect();
    Ok(SparsityPattern::from_columns(n, n, columns))
}

/// Neighbor-level expansion: the boolean power `P^(level + 1)` of the
/// diagonal-inclusive pattern (the diagonal is added first when absent).
/// Level 0 returns the diagonal-inclusive pattern unchanged; each further
/// level reaches one more step of the adjacency graph.
pub fn expand_level(p: &SparsityPattern, level: usize) -> Result<SparsityPattern> {
    let base = union_with_diagonal(p)?;
    let mut out = base.clone();
    for _ in 0..level {
        out = pattern_multiply(&out, &base)?;
    }
    Ok(out)
}

/// Transitive closure of the adjacency structure: `(i, j)` is present
/// exactly when the graph of the diagonal-inclusive pattern has a directed
/// path between the vertices. Computed by repeated boolean squaring, which
/// is monotone here, so the fixed point is reached within `log2(n)` rounds.
///
/// The worst case output is fully dense, hence the dimension cap.
pub fn transitive_closure(p: &SparsityPattern, cap: usize) -> Result<SparsityPattern> {
    if !p.is_square() {
        return Err(Error::NotSquare {
            context: "transitive closure",
            nrows: p.nrows(),
            ncols: p.ncols(),
        });
    }
    if p.ncols() > cap {
        return Err(Error::ClosureCapExceeded { n: p.ncols(), cap });
    }
    let mut current = union_with_diagonal(p)?;
    loop {
        let squared = pattern_multiply(&current, &current)?;
        if squared.nnz() == current.nnz() {
            return Ok(current);
        }
        current = squared;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn identity(n: usize) -> SparseMatrix {
        let triplets: Vec<_> = (0..n).map(|i| (i, i, 1.0)).collect();
        SparseMatrix::from_triplets(n, n, &triplets).unwrap()
    }

    /// Cubic-time boolean product used as the oracle for `pattern_multiply`.
    fn brute_force_product(p: &SparsityPattern, q: &SparsityPattern) -> SparsityPattern {
        let mut entries = Vec::new();
        for i in 0..p.nrows() {
            for j in 0..q.ncols() {
                for m in 0..p.ncols() {
                    if p.contains(i, m) && q.contains(m, j) {
                        entries.push((i, j));
                        break;
                    }
                }
            }
        }
        SparsityPattern::from_entries(p.nrows(), q.ncols(), &entries).unwrap()
    }

    #[test]
    fn global_threshold_keeps_only_diagonal_for_identity() {
        let p = sparsify_global(&identity(3), 0.5, ScalingMode::Normalized).unwrap();
        assert_eq!(p, SparsityPattern::diagonal(3));
    }

    #[test]
    fn global_threshold_scales_by_diagonal() {
        // Scaled magnitude of the (0, 1) entry is 1 / (2 * 3) = 1/6.
        let a =
            SparseMatrix::from_triplets(2, 2, &[(0, 0, 4.0), (0, 1, 1.0), (1, 1, 9.0)]).unwrap();
        let dropped = sparsify_global(&a, 0.2, ScalingMode::Normalized).unwrap();
        assert_eq!(dropped, SparsityPattern::diagonal(2));
        let kept = sparsify_global(&a, 0.1, ScalingMode::Normalized).unwrap();
        assert_eq!(
            kept,
            SparsityPattern::from_entries(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap()
        );
    }

    #[test]
    fn global_threshold_literal_amplifies() {
        // Literal scaling gives 2 * 1 * 3 = 6 for the same entry.
        let a =
            SparseMatrix::from_triplets(2, 2, &[(0, 0, 4.0), (0, 1, 1.0), (1, 1, 9.0)]).unwrap();
        let kept = sparsify_global(&a, 5.0, ScalingMode::Literal).unwrap();
        assert!(kept.contains(0, 1));
        let dropped = sparsify_global(&a, 7.0, ScalingMode::Literal).unwrap();
        assert_eq!(dropped, SparsityPattern::diagonal(2));
    }

    #[test]
    fn column_threshold_on_identity() {
        for tau in [0.0, 0.5, 1.0] {
            let p = sparsify_column_threshold(&identity(4), tau).unwrap();
            assert_eq!(p, SparsityPattern::diagonal(4));
        }
    }

    #[test]
    fn column_threshold_cutoff_arithmetic() {
        // Column 0 magnitudes: 4 on the diagonal, then 1 and 0.5.
        let a = SparseMatrix::from_triplets(
            3,
            3,
            &[
                (0, 0, 4.0),
                (1, 0, 1.0),
                (2, 0, 0.5),
                (1, 1, 1.0),
                (2, 2, 1.0),
            ],
        )
        .unwrap();
        // tau = 0.8: cutoff 0.8 keeps magnitudes 4 and 1.
        let p = sparsify_column_threshold(&a, 0.8).unwrap();
        assert_eq!(p.col(0), &[0, 1]);
        // tau = 0.6: cutoff 1.6 keeps the diagonal only.
        let p = sparsify_column_threshold(&a, 0.6).unwrap();
        assert_eq!(p.col(0), &[0]);
    }

    #[test]
    fn column_threshold_rejects_bad_tau() {
        assert!(sparsify_column_threshold(&identity(2), 1.5).is_err());
        assert!(sparsify_column_threshold(&identity(2), -0.1).is_err());
    }

    #[test]
    fn lfil_keeps_largest_entries() {
        let a = SparseMatrix::from_triplets(
            4,
            4,
            &[
                (0, 0, 4.0),
                (1, 0, 3.0),
                (2, 0, 2.0),
                (3, 0, 1.0),
                (1, 1, 1.0),
                (2, 2, 1.0),
                (3, 3, 1.0),
            ],
        )
        .unwrap();
        let p = sparsify_lfil(&a, 2).unwrap();
        assert_eq!(p.col(0), &[0, 1]);
    }

    #[test]
    fn lfil_does_not_invent_entries() {
        let a = SparseMatrix::from_triplets(
            3,
            3,
            &[(0, 0, 1.0), (1, 0, 2.0), (1, 1, 1.0), (2, 2, 1.0)],
        )
        .unwrap();
        let p = sparsify_lfil(&a, 3).unwrap();
        assert_eq!(p.col(0), &[0, 1]);
    }

    #[test]
    fn lfil_five_keeps_a_five_entry_column() {
        let a = SparseMatrix::from_triplets(
            5,
            5,
            &[
                (0, 0, 4.0),
                (1, 0, -1.0),
                (2, 0, -1.0),
                (3, 0, -1.0),
                (4, 0, -1.0),
                (1, 1, 1.0),
                (2, 2, 1.0),
                (3, 3, 1.0),
                (4, 4, 1.0),
            ],
        )
        .unwrap();
        let p = sparsify_lfil(&a, 5).unwrap();
        assert_eq!(p.col(0), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn lfil_ties_prefer_smaller_row() {
        let a = SparseMatrix::from_triplets(
            4,
            4,
            &[
                (0, 0, 1.0),
                (1, 0, 2.0),
                (3, 0, 2.0),
                (1, 1, 1.0),
                (2, 2, 1.0),
                (3, 3, 1.0),
            ],
        )
        .unwrap();
        let p = sparsify_lfil(&a, 1).unwrap();
        // Rows 1 and 3 tie at magnitude 2; row 1 wins, diagonal is added.
        assert_eq!(p.col(0), &[0, 1]);
    }

    #[test]
    fn multiply_by_identity_pattern() {
        let (_, source) = samples::worked_pair();
        let p = source.pattern();
        let eye = SparsityPattern::diagonal(7);
        assert_eq!(pattern_multiply(&p, &eye).unwrap(), p);
        assert_eq!(pattern_multiply(&eye, &p).unwrap(), p);
        assert_eq!(pattern_multiply(&eye, &eye).unwrap(), eye);
    }

    #[test]
    fn multiply_matches_brute_force_on_worked_pair() {
        let (target, _) = samples::worked_pair();
        let p = target.pattern();
        let fast = pattern_multiply(&p, &p).unwrap();
        let slow = brute_force_product(&p, &p);
        assert_eq!(fast, slow);
    }

    #[test]
    fn multiply_rejects_dimension_mismatch() {
        let p = SparsityPattern::diagonal(3);
        let q = SparsityPattern::diagonal(4);
        assert!(pattern_multiply(&p, &q).is_err());
    }

    #[test]
    fn expand_level_on_diagonal_is_diagonal() {
        let diag = SparsityPattern::diagonal(5);
        for level in 0..4 {
            assert_eq!(expand_level(&diag, level).unwrap(), diag);
        }
    }

    #[test]
    fn expand_level_powers_match_repeated_products() {
        let (_, source) = samples::worked_pair();
        let p = union_with_diagonal(&source.pattern()).unwrap();
        let squared = pattern_multiply(&p, &p).unwrap();
        let cubed = pattern_multiply(&squared, &p).unwrap();
        assert_eq!(expand_level(&p, 0).unwrap(), p);
        assert_eq!(expand_level(&p, 1).unwrap(), squared);
        assert_eq!(expand_level(&p, 2).unwrap(), cubed);
    }

    #[test]
    fn closure_of_diagonal_is_diagonal() {
        let diag = SparsityPattern::diagonal(6);
        assert_eq!(transitive_closure(&diag, 2048).unwrap(), diag);
    }

    #[test]
    fn closure_of_bidiagonal_chain_is_lower_triangle() {
        // Chain 0 <- 1 <- 2 <- 3 stored as subdiagonal entries.
        let p = SparsityPattern::from_entries(4, 4, &[(1, 0), (2, 1), (3, 2)]).unwrap();
        let closure = transitive_closure(&p, 2048).unwrap();
        let mut expected = Vec::new();
        for j in 0..4 {
            for i in j..4 {
                expected.push((i, j));
            }
        }
        assert_eq!(
            closure,
            SparsityPattern::from_entries(4, 4, &expected).unwrap()
        );
    }

    #[test]
    fn closure_is_idempotent_and_fixed_under_expansion() {
        let (_, source) = samples::worked_pair();
        let closure = transitive_closure(&source.pattern(), 2048).unwrap();
        assert_eq!(transitive_closure(&closure, 2048).unwrap(), closure);
        assert_eq!(expand_level(&closure, 1).unwrap(), closure);
        assert_eq!(expand_level(&closure, 3).unwrap(), closure);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let p = SparsityPattern::diagonal(10);
        assert!(matches!(
            transitive_closure(&p, 9),
            Err(Error::ClosureCapExceeded { n: 10, cap: 9 })
        ));
    }

    #[test]
    fn diagonal_union_cases() {
        let empty = SparsityPattern::empty(3, 3);
        assert_eq!(
            union_with_diagonal(&empty).unwrap(),
            SparsityPattern::diagonal(3)
        );
        let diag = SparsityPattern::diagonal(3);
        assert_eq!(union_with_diagonal(&diag).unwrap(), diag);
        let (target, _) = samples::worked_pair();
        let p = target.pattern();
        assert_eq!(union_with_diagonal(&p).unwrap(), p);
    }

    #[test]
    fn recipe_parsing_round_trips() {
        for spec in [
            "target",
            "target@level1",
            "global:0.01",
            "global:0.001:literal",
            "col:0.8@level1",
            "lfil:5@level2",
        ] {
            let recipe: PatternRecipe = spec.parse().unwrap();
            assert_eq!(recipe.to_string(), spec);
        }
    }

    #[test]
    fn recipe_parsing_rejects_garbage() {
        for spec in [
            "",
            "unknown:1",
            "col:1.5",
            "col:-0.1",
            "lfil:0",
            "lfil:abc",
            "global:",
            "global:0.1:weird",
            "col:0.8@lvl1",
            "target:0.5",
            "col:0.8:extra",
        ] {
            assert!(spec.parse::<PatternRecipe>().is_err(), "accepted '{spec}'");
        }
    }

    #[test]
    fn recipe_build_uses_requested_matrix() {
        let (target, source) = samples::worked_pair();
        let target_recipe: PatternRecipe = "target".parse().unwrap();
        assert_eq!(
            target_recipe.build(&source, &target).unwrap(),
            target.pattern()
        );
        let lfil_recipe: PatternRecipe = "lfil:7".parse().unwrap();
        assert_eq!(
            lfil_recipe.build(&source, &target).unwrap(),
            source.pattern()
        );
    }
}
