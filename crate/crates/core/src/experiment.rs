//! Experiment driver: sweeps pattern recipes over a matrix sequence,
//! computes the maps, and reports pattern sizes and relative residuals as
//! CSV rows.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::market;
use crate::patterns::{self, PatternRecipe};
use crate::problems::{self, Cd2dConfig, ShiftedConfig};
use crate::sam;
use crate::sparse::MatrixSequence;
use crate::DEFAULT_DENSE_CAP;

/// Where the sequence of an experiment comes from.
#[derive(Debug, Clone)]
pub enum SequenceSource {
    /// A manifest file listing Matrix Market files in sequence order.
    Manifest(PathBuf),
    /// Generate the convection-diffusion Newton sequence.
    Cd2d(Cd2dConfig),
    /// Generate a shifted sequence.
    Shifted(ShiftedConfig),
}

impl SequenceSource {
    /// Loads or generates the sequence.
    pub fn load(&self) -> Result<MatrixSequence> {
        match self {
            SequenceSource::Manifest(path) => market::read_sequence_manifest(path),
            SequenceSource::Cd2d(cfg) => Ok(problems::generate_cd2d_sequence(cfg)?.sequence),
            SequenceSource::Shifted(cfg) => problems::generate_shifted_sequence(cfg),
        }
    }
}

/// A recipe sweep over one sequence.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: SequenceSource,
    /// Index of the target matrix; every other entry is mapped onto it.
    pub target_index: usize,
    pub recipes: Vec<PatternRecipe>,
    /// Dimension cap for the dense paths (exact-map studies).
    pub dense_cap: usize,
    /// Drop tolerances of the exact-map study.
    pub drop_tols: Vec<f64>,
}

impl ExperimentConfig {
    pub fn new(source: SequenceSource) -> Self {
        ExperimentConfig {
            source,
            target_index: 0,
            recipes: Vec::new(),
            dense_cap: DEFAULT_DENSE_CAP,
            drop_tols: vec![1e-2, 1e-4],
        }
    }
}

/// One `(sequence index, recipe)` cell of the sweep.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub k: usize,
    pub recipe: String,
    pub nnz_pattern: usize,
    pub nnz_map: usize,
    pub rel_residual: f64,
    pub rank_def_cols: usize,
    /// Wall time of the pattern build plus the map solve, in milliseconds.
    /// Segregated to the last CSV column so reports stay diffable.
    pub wall_ms: f64,
}

/// Runs the sweep: for every sequence index except the target and every
/// recipe, builds the pattern, computes the map onto the target and records
/// one row. Rows come out ordered by index first, recipe second, and their
/// contents (wall time aside) depend only on the inputs.
pub fn run_experiment_on(
    seq: &MatrixSequence,
    target_index: usize,
    recipes: &[PatternRecipe],
) -> Result<Vec<ReportRow>> {
    if recipes.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one pattern recipe is required".into(),
        ));
    }
    if target_index >= seq.len() {
        return Err(Error::InvalidParameter(format!(
            "target index {target_index} outside sequence of length {}",
            seq.len()
        )));
    }
    let target = seq.entry(target_index);
    let mut rows = Vec::with_capacity(seq.len().saturating_sub(1) * recipes.len());
    for k in 0..seq.len() {
        if k == target_index {
            continue;
        }
        let source = seq.entry(k);
        for recipe in recipes {
            let started = Instant::now();
            let pattern = recipe.build(source, target)?;
            let result = sam::compute_sam(source, target, &pattern)?;
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            rows.push(ReportRow {
                k,
                recipe: recipe.to_string(),
                nnz_pattern: result.nnz_pattern,
                nnz_map: result.nnz_map,
                rel_residual: result.relative_residual,
                rank_def_cols: result.rank_deficient_cols(),
                wall_ms,
            });
        }
    }
    Ok(rows)
}

/// Loads the configured sequence and runs [`run_experiment_on`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let seq = cfg.source.load()?;
    run_experiment_on(&seq, cfg.target_index, &cfg.recipes)
}

/// Writes the sweep rows as CSV. Floats carry 17 significant digits so a
/// re-run diff is byte-clean everywhere except the trailing wall time.
pub fn write_report_csv(rows: &[ReportRow], mut w: impl Write) -> std::io::Result<()> {
    writeln!(
        w,
        "k,recipe,nnz_pattern,nnz_map,rel_residual,rank_def_cols,wall_ms"
    )?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{:.16e},{},{:.16e}",
            row.k,
            row.recipe,
            row.nnz_pattern,
            row.nnz_map,
            row.rel_residual,
            row.rank_def_cols,
            row.wall_ms
        )?;
    }
    Ok(())
}

/// One cell of the exact-map sparsification study.
#[derive(Debug, Clone)]
pub struct ExactMapRow {
    pub k: usize,
    pub drop_tol: f64,
    /// Entries of the exact map whose magnitude exceeds `drop_tol`.
    pub nnz: usize,
}

/// For every sequence entry, forms the dense exact map onto the target and
/// counts the entries surviving each drop tolerance. Rows are ordered by
/// index first, tolerance second (in the given order).
pub fn run_exactmap_study(
    seq: &MatrixSequence,
    target_index: usize,
    drop_tols: &[f64],
    dense_cap: usize,
) -> Result<Vec<ExactMapRow>> {
    if drop_tols.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one drop tolerance is required".into(),
        ));
    }
    if drop_tols.iter().any(|&t| t < 0.0) {
        return Err(Error::InvalidParameter(
            "drop tolerances must be nonnegative".into(),
        ));
    }
    if target_index >= seq.len() {
        return Err(Error::InvalidParameter(format!(
            "target index {target_index} outside sequence of length {}",
            seq.len()
        )));
    }
    let target = seq.entry(target_index);
    let mut rows = Vec::with_capacity(seq.len() * drop_tols.len());
    for k in 0..seq.len() {
        let map = sam::exact_map(seq.entry(k), target, dense_cap)?;
        for &drop_tol in drop_tols {
            let nnz = sam::sparsify_dense_map(&map, drop_tol).nnz();
            rows.push(ExactMapRow { k, drop_tol, nnz });
        }
    }
    Ok(rows)
}

/// Writes the exact-map study as CSV.
pub fn write_exactmap_csv(rows: &[ExactMapRow], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "k,drop_tol,nnz")?;
    for row in rows {
        writeln!(w, "{},{:.16e},{}", row.k, row.drop_tol, row.nnz)?;
    }
    Ok(())
}

/// Outcome of the closure consistency check.
#[derive(Debug, Clone)]
pub struct ClosureCheck {
    /// Whether `pattern(target)` is a subset of `pattern(source)`.
    pub subset_holds: bool,
    /// Whether the pattern of the exact map (after the drop tolerance)
    /// equals the transitive closure of the source pattern.
    pub patterns_match: bool,
    pub closure_nnz: usize,
    pub map_nnz: usize,
}

impl ClosureCheck {
    pub fn pass(&self) -> bool {
        self.subset_holds && self.patterns_match
    }
}

/// Compares the support of the dense exact map `source^-1 * target` against
/// the transitive closure of the source pattern, and reports whether the
/// target pattern is nested in the source pattern.
pub fn run_closure_check(
    source: &crate::sparse::SparseMatrix,
    target: &crate::sparse::SparseMatrix,
    drop_tol: f64,
    dense_cap: usize,
    closure_cap: usize,
) -> Result<ClosureCheck> {
    let subset_holds = target.pattern().is_subset(&source.pattern())?;
    let map = sam::exact_map(source, target, dense_cap)?;
    let map_pattern = sam::sparsify_dense_map(&map, drop_tol);
    let closure = patterns::transitive_closure(&source.pattern(), closure_cap)?;
    Ok(ClosureCheck {
        subset_holds,
        patterns_match: map_pattern == closure,
        closure_nnz: closure.nnz(),
        map_nnz: map_pattern.nnz(),
    })
}
