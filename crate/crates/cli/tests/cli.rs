//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use samap::market;
use samap::samples;

fn samap_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_samap"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    samap_bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn gen_and_run_produce_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run_in(dir.path(), &["gen", "cd2d", "--m", "8", "--out", "seq"]);
    assert!(
        gen.status.success(),
        "{}",
        String::from_utf8_lossy(&gen.stderr)
    );
    let manifest = dir.path().join("seq/manifest.txt");
    assert!(manifest.exists());
    let seq = market::read_sequence_manifest(&manifest).unwrap();
    assert!(seq.len() >= 2);
    assert_eq!(seq.dim(), 64);

    let run = run_in(
        dir.path(),
        &[
            "run",
            "--seq",
            "seq/manifest.txt",
            "--recipe",
            "target",
            "--recipe",
            "lfil:5@level1",
            "--out",
            "out",
        ],
    );
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("out/report.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,recipe,nnz_pattern,nnz_map,rel_residual,rank_def_cols,wall_ms"
    );
    assert_eq!(csv.lines().count(), 1 + (seq.len() - 1) * 2);
}

#[test]
fn closure_check_passes_on_the_sample_pair() {
    let dir = tempfile::tempdir().unwrap();
    let (target, source) = samples::worked_pair();
    market::write_matrix_market(&source, dir.path().join("source.mtx")).unwrap();
    market::write_matrix_market(&target, dir.path().join("target.mtx")).unwrap();
    let out = run_in(dir.path(), &["closure-check", "source.mtx", "target.mtx"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("subset S(target) <= S(source): HOLDS"),
        "{text}"
    );
    assert!(text.contains("closure-check: PASS"), "{text}");
}

#[test]
fn closure_check_reports_singular_source_as_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    // Rank-1 source: the exact map does not exist.
    let singular = samap::sparse::SparseMatrix::from_triplets(
        2,
        2,
        &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)],
    )
    .unwrap();
    market::write_matrix_market(&singular, dir.path().join("s.mtx")).unwrap();
    let out = run_in(dir.path(), &["closure-check", "s.mtx", "s.mtx"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown recipe.
    let (target, _) = samples::worked_pair();
    market::write_matrix_market(&target, dir.path().join("t.mtx")).unwrap();
    fs::write(dir.path().join("manifest.txt"), "t.mtx\nt.mtx\n").unwrap();
    let out = run_in(
        dir.path(),
        &[
            "run",
            "--seq",
            "manifest.txt",
            "--recipe",
            "bogus",
            "--out",
            "o",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    // Missing required flag.
    let out = run_in(dir.path(), &["run", "--out", "o", "--recipe", "target"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing matrix file.
    fs::write(dir.path().join("bad.txt"), "nope.mtx\n").unwrap();
    let out = run_in(
        dir.path(),
        &[
            "run", "--seq", "bad.txt", "--recipe", "target", "--out", "o",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_shifted_accepts_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("gen.toml"),
        "[shifted]\nm = 6\nshifts = [0.0, 25.0, 50.0]\nmass = \"tridiagonal\"\n",
    )
    .unwrap();
    let out = run_in(
        dir.path(),
        &["gen", "shifted", "--config", "gen.toml", "--out", "seq"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let seq = market::read_sequence_manifest(dir.path().join("seq/manifest.txt")).unwrap();
    assert_eq!(seq.len(), 3);
    assert_eq!(seq.dim(), 36);
    // Flags override the file.
    let out = run_in(
        dir.path(),
        &[
            "gen", "shifted", "--config", "gen.toml", "--m", "4", "--out", "seq2",
        ],
    );
    assert!(out.status.success());
    let seq2 = market::read_sequence_manifest(dir.path().join("seq2/manifest.txt")).unwrap();
    assert_eq!(seq2.dim(), 16);
}

#[test]
fn gen_cd2d_warns_on_partial_sequence_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "gen",
            "cd2d",
            "--m",
            "6",
            "--max-newton",
            "1",
            "--newton-tol",
            "1e-14",
            "--out",
            "seq",
        ],
    );
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let seq = market::read_sequence_manifest(dir.path().join("seq/manifest.txt")).unwrap();
    assert_eq!(seq.len(), 1);
}

#[test]
fn sparsify_dumps_a_readable_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let (_, source) = samples::worked_pair();
    market::write_matrix_market(&source, dir.path().join("a.mtx")).unwrap();
    let out = run_in(
        dir.path(),
        &[
            "sparsify", "--matrix", "a.mtx", "--recipe", "lfil:2", "--out", "p.mtx",
        ],
    );
    assert!(out.status.success());
    let pattern_matrix = market::read_matrix_market(dir.path().join("p.mtx")).unwrap();
    let expected = samap::patterns::sparsify_lfil(&source, 2).unwrap();
    assert_eq!(pattern_matrix.pattern(), expected);
    assert!(stdout(&out).contains(&format!("pattern nnz = {}", expected.nnz())));
}

#[test]
fn exactmap_study_defaults_to_paper_tolerances() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run_in(
        dir.path(),
        &[
            "gen",
            "shifted",
            "--m",
            "6",
            "--num-shifts",
            "3",
            "--shift-step",
            "40",
            "--out",
            "seq",
        ],
    );
    assert!(gen.status.success());
    let out = run_in(
        dir.path(),
        &[
            "exactmap-study",
            "--seq",
            "seq/manifest.txt",
            "--out",
            "study",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("study/exactmap.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "k,drop_tol,nnz");
    // 3 matrices x 2 default tolerances.
    assert_eq!(csv.lines().count(), 1 + 6);
}
