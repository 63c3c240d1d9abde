//! Command line experiment runner for sparse approximate maps.
//!
//! Subcommands:
//!
//! * `gen cd2d` / `gen shifted`: generate a matrix sequence and write it as
//!   Matrix Market files plus a manifest,
//! * `run`: sweep pattern recipes over a sequence and write a CSV report,
//! * `closure-check`: compare the exact-map support against the transitive
//!   closure of the source pattern,
//! * `exactmap-study`: count exact-map entries surviving drop tolerances,
//! * `sparsify`: apply one recipe to one matrix and dump the pattern.
//!
//! Exit codes: 0 on success, 1 for configuration or input problems, 2 for
//! numerical failures (singular matrices, stalled line searches).

mod config;

use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use samap::experiment::{
    run_closure_check, run_exactmap_study, run_experiment_on, write_exactmap_csv, write_report_csv,
};
use samap::market;
use samap::patterns::PatternRecipe;
use samap::problems::{generate_cd2d_sequence, generate_shifted_sequence};
use samap::{DEFAULT_CLOSURE_CAP, DEFAULT_DENSE_CAP};

#[derive(Parser)]
#[command(
    name = "samap",
    version,
    about = "Sparse approximate map experiments over sequences of sparse linear systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a matrix sequence and write it with a manifest
    #[command(subcommand)]
    Gen(GenCommand),
    /// Sweep pattern recipes over a sequence and write a CSV report
    Run(RunArgs),
    /// Check the exact-map support against the closure of the source pattern
    ClosureCheck(ClosureCheckArgs),
    /// Count exact-map entries surviving drop tolerances, as CSV
    ExactmapStudy(ExactmapStudyArgs),
    /// Apply one pattern recipe to a matrix and dump the pattern
    Sparsify(SparsifyArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Jacobian sequence of the nonlinear convection-diffusion Newton run
    Cd2d(GenCd2dArgs),
    /// Shifted five-point Laplacian sequence
    Shifted(GenShiftedArgs),
}

#[derive(Args)]
struct GenCd2dArgs {
    /// Interior grid points per side (matrix dimension is m^2)
    #[arg(long)]
    m: Option<usize>,
    /// Constant diffusion coefficient
    #[arg(long)]
    eta: Option<f64>,
    /// Coefficient of the u^2 diffusion term
    #[arg(long)]
    gamma: Option<f64>,
    /// Convection speed along x
    #[arg(long)]
    conv_x: Option<f64>,
    /// Convection speed along y
    #[arg(long)]
    conv_y: Option<f64>,
    /// Reaction coefficient
    #[arg(long)]
    reaction: Option<f64>,
    /// Constant forcing term
    #[arg(long)]
    forcing: Option<f64>,
    /// Newton tolerance on the residual norm
    #[arg(long)]
    newton_tol: Option<f64>,
    /// Maximum Newton steps
    #[arg(long)]
    max_newton: Option<usize>,
    #[arg(long, help = "Config file with a [cd2d] section of key = value lines")]
    config: Option<PathBuf>,
    /// Output directory for the .mtx files and the manifest
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenShiftedArgs {
    /// Interior grid points per side (matrix dimension is m^2)
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated shift values, one matrix per shift
    #[arg(long, value_delimiter = ',')]
    shifts: Vec<f64>,
    /// Number of shifts when --shifts is not given
    #[arg(long)]
    num_shifts: Option<usize>,
    /// Spacing of generated shifts when --shifts is not given
    #[arg(long)]
    shift_step: Option<f64>,
    /// Mass matrix shape: diagonal or tridiagonal
    #[arg(long)]
    mass: Option<String>,
    #[arg(
        long,
        help = "Config file with a [shifted] section of key = value lines"
    )]
    config: Option<PathBuf>,
    /// Output directory for the .mtx files and the manifest
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Sequence manifest: one matrix path per line, in order
    #[arg(long)]
    seq: PathBuf,
    /// Index of the target matrix within the sequence
    #[arg(long, default_value_t = 0)]
    target: usize,
    #[arg(
        long = "recipe",
        required = true,
        help = "Pattern recipe spec, repeatable: target, global:<t>[:literal], \
                col:<tau> or lfil:<k>, each with an optional @level<l> modifier"
    )]
    recipes: Vec<String>,
    /// Output directory for report.csv
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ClosureCheckArgs {
    /// Source matrix (Matrix Market)
    source: PathBuf,
    /// Target matrix (Matrix Market)
    target: PathBuf,
    /// Magnitudes at or below this are treated as structural zeros of the map
    #[arg(long, default_value_t = 1e-12)]
    drop_tol: f64,
    /// Dimension cap for the dense exact map
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: usize,
}

#[derive(Args)]
struct ExactmapStudyArgs {
    /// Sequence manifest: one matrix path per line, in order
    #[arg(long)]
    seq: PathBuf,
    /// Index of the target matrix within the sequence
    #[arg(long, default_value_t = 0)]
    target: usize,
    /// Drop tolerance, repeatable; defaults to 1e-2 and 1e-4
    #[arg(long = "drop-tol")]
    drop_tols: Vec<f64>,
    /// Dimension cap for the dense exact maps
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: usize,
    /// Output directory for exactmap.csv
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SparsifyArgs {
    /// Input matrix (Matrix Market)
    #[arg(long)]
    matrix: PathBuf,
    /// Pattern recipe spec
    #[arg(long)]
    recipe: String,
    /// Output pattern file (Matrix Market, pattern kind)
    #[arg(long)]
    out: PathBuf,
}

enum CliError {
    Core(samap::Error),
    Config(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Config(msg) => f.write_str(msg),
        }
    }
}

impl From<samap::Error> for CliError {
    fn from(e: samap::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(samap::Error::Io(e))
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(GenCommand::Cd2d(args)) => gen_cd2d(args),
        Command::Gen(GenCommand::Shifted(args)) => gen_shifted(args),
        Command::Run(args) => run(args),
        Command::ClosureCheck(args) => closure_check(args),
        Command::ExactmapStudy(args) => exactmap_study(args),
        Command::Sparsify(args) => sparsify(args),
    }
}

fn gen_cd2d(args: GenCd2dArgs) -> Result<(), CliError> {
    let cfg = config::cd2d_config(&args)?;
    let outcome = generate_cd2d_sequence(&cfg)?;
    if !outcome.converged {
        eprintln!(
            "warning: Newton stopped at max_newton = {} with |F| = {:.3e}; sequence is partial",
            cfg.max_newton,
            outcome.fnorm_history.last().copied().unwrap_or(f64::NAN)
        );
    }
    let manifest = market::write_sequence(&outcome.sequence, &args.out)?;
    println!(
        "wrote {} matrices (n = {}) to {} (manifest: {})",
        outcome.sequence.len(),
        outcome.sequence.dim(),
        args.out.display(),
        manifest.display()
    );
    Ok(())
}

fn gen_shifted(args: GenShiftedArgs) -> Result<(), CliError> {
    let cfg = config::shifted_config(&args)?;
    let seq = generate_shifted_sequence(&cfg)?;
    let manifest = market::write_sequence(&seq, &args.out)?;
    println!(
        "wrote {} matrices (n = {}) to {} (manifest: {})",
        seq.len(),
        seq.dim(),
        args.out.display(),
        manifest.display()
    );
    Ok(())
}

fn parse_recipes(specs: &[String]) -> Result<Vec<PatternRecipe>, CliError> {
    specs.iter().map(|s| Ok(s.parse()?)).collect()
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let recipes = parse_recipes(&args.recipes)?;
    let seq = market::read_sequence_manifest(&args.seq)?;
    let rows = run_experiment_on(&seq, args.target, &recipes)?;
    fs::create_dir_all(&args.out)?;
    let report_path = args.out.join("report.csv");
    let file = fs::File::create(&report_path)?;
    write_report_csv(&rows, std::io::BufWriter::new(file)).map_err(samap::Error::Io)?;
    println!("wrote {} rows to {}", rows.len(), report_path.display());
    Ok(())
}

fn closure_check(args: ClosureCheckArgs) -> Result<(), CliError> {
    let source = market::read_matrix_market(&args.source)?;
    let target = market::read_matrix_market(&args.target)?;
    let check = run_closure_check(
        &source,
        &target,
        args.drop_tol,
        args.dense_cap,
        DEFAULT_CLOSURE_CAP,
    )?;
    println!(
        "subset S(target) <= S(source): {}",
        if check.subset_holds {
            "HOLDS"
        } else {
            "VIOLATED"
        }
    );
    println!(
        "map pattern vs closure(S(source)): {} (map nnz = {}, closure nnz = {})",
        if check.patterns_match {
            "MATCH"
        } else {
            "MISMATCH"
        },
        check.map_nnz,
        check.closure_nnz
    );
    println!(
        "closure-check: {}",
        if check.pass() { "PASS" } else { "FAIL" }
    );
    Ok(())
}

fn exactmap_study(args: ExactmapStudyArgs) -> Result<(), CliError> {
    let drop_tols = if args.drop_tols.is_empty() {
        vec![1e-2, 1e-4]
    } else {
        args.drop_tols.clone()
    };
    let seq = market::read_sequence_manifest(&args.seq)?;
    let rows = run_exactmap_study(&seq, args.target, &drop_tols, args.dense_cap)?;
    fs::create_dir_all(&args.out)?;
    let csv_path = args.out.join("exactmap.csv");
    let file = fs::File::create(&csv_path)?;
    write_exactmap_csv(&rows, std::io::BufWriter::new(file)).map_err(samap::Error::Io)?;
    println!("wrote {} rows to {}", rows.len(), csv_path.display());
    Ok(())
}

fn sparsify(args: SparsifyArgs) -> Result<(), CliError> {
    let recipe: PatternRecipe = args.recipe.parse()?;
    let matrix = market::read_matrix_market(&args.matrix)?;
    // A one-shot dump has a single matrix standing in for both roles.
    let pattern = recipe.build(&matrix, &matrix)?;
    market::write_pattern_market(&pattern, &args.out)?;
    println!(
        "recipe {} on {}: pattern nnz = {} written to {}",
        recipe,
        args.matrix.display(),
        pattern.nnz(),
        args.out.display()
    );
    Ok(())
}
