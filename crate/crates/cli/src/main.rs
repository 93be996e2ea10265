//! Command-line front-end for the move-graph library.
//!
//! Exit status: 0 on success, 1 on a domain error, 2 when a verification
//! suite falsifies a property (reserved for exactly that), 3 when a
//! construction exceeds the size budget, 64 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use movegraph::{
    oeis_terms, predict, run_verify, subadd_int_matrix, survey, survey_csv, survey_json,
    tree_report, Error as LibError, IntMatrix, LevelPartition, ModMatrix, Modulus, MoveGraph,
    SizeBudget, SuiteSelection, VerifyConfig,
};

const BUDGET_ENV: &str = "MOVEGRAPH_BUDGET";

#[derive(Parser)]
#[command(
    name = "movegraph",
    version,
    about = "Construct, decompose, verify and predict move graphs on Z_n^m"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a move graph and export it (JSON document or DOT).
    Build(GraphArgs),
    /// Decompose a move graph and report its cycle spectrum.
    Analyze(GraphArgs),
    /// Level partition and tree shape of the sub-add graph mod 2^r.
    Levels(LevelsArgs),
    /// Analytic cycle prediction for the sub-add graph mod an odd prime.
    Predict(PredictArgs),
    /// Run the verification suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Prediction survey over all odd primes up to a bound (CSV).
    Survey(SurveyArgs),
    /// Weak-component counts of the sub-add graph for n = 1..n_max.
    Oeis(OeisArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Args)]
struct MatrixSpec {
    /// Built-in move matrix: the sub-add matrix or the 3x3 cyclic
    /// permutation matrix.
    #[arg(long, value_parser = ["subadd", "perm3"])]
    preset: Option<String>,

    /// Inline row-major matrix, rows separated by ';': "1,-1;1,1".
    /// Entries may be negative; they are canonicalised mod n.
    #[arg(long)]
    matrix: Option<String>,

    /// Modulus n >= 2.
    #[arg(long)]
    n: u64,

    /// Expected dimension m (cross-checked against the matrix).
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    matrix: MatrixSpec,

    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Maximum number of vertices to allocate (default 10^8; the
    /// MOVEGRAPH_BUDGET environment variable overrides this flag).
    #[arg(long)]
    size_budget: Option<u64>,
}

#[derive(Args)]
struct LevelsArgs {
    /// Power-of-two exponent: the modulus is 2^r.
    #[arg(long)]
    r: u32,

    #[arg(long, value_enum)]
    format: Option<Format>,

    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long)]
    size_budget: Option<u64>,
}

#[derive(Args)]
struct PredictArgs {
    /// Odd prime modulus.
    #[arg(long)]
    p: u64,

    #[arg(long, value_enum)]
    format: Option<Format>,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run: all, fixtures, structure, levels, odd, mixed,
    /// prediction.
    #[arg(long, default_value = "all")]
    suite: String,

    /// Upper bound of the odd-modulus sweep.
    #[arg(long, default_value_t = 99)]
    n_max: u64,

    /// Upper bound (inclusive) of the prime sweep.
    #[arg(long, default_value_t = 199)]
    p_max: u64,

    /// Upper bound of the power-of-two exponent sweep.
    #[arg(long, default_value_t = 10)]
    r_max: u32,

    /// Bound on n1 * n2 for the embedding and tensor sweeps.
    #[arg(long, default_value_t = 36)]
    pair_max: u64,

    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long)]
    size_budget: Option<u64>,
}

#[derive(Args)]
struct SurveyArgs {
    /// Survey all odd primes p <= p_max.
    #[arg(long)]
    p_max: u64,

    #[arg(long, value_enum)]
    format: Option<Format>,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OeisArgs {
    /// Emit terms for n = 1..=n_max, one per line.
    #[arg(long)]
    n_max: u64,

    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long)]
    size_budget: Option<u64>,
}

// ---------------------------------------------------------------------------
// Error mapping
// ---------------------------------------------------------------------------

enum CliError {
    Usage(String),
    Lib(LibError),
    Io(std::io::Error),
    /// A verification suite falsified a property on the budgeted grid.
    VerificationFailed,
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Lib(LibError::Capacity { .. }) => 3,
            CliError::VerificationFailed => 2,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Lib(e) => e.to_string(),
            CliError::Io(e) => format!("io error: {e}"),
            CliError::VerificationFailed => "verification failed".into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("movegraph: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Levels(args) => cmd_levels(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Survey(args) => cmd_survey(args),
        Command::Oeis(args) => cmd_oeis(args),
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn budget_from(flag: Option<u64>) -> Result<SizeBudget, CliError> {
    if let Ok(raw) = std::env::var(BUDGET_ENV) {
        let value: u64 = raw
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be an integer, got {raw:?}")))?;
        return Ok(SizeBudget(value));
    }
    Ok(flag.map(SizeBudget).unwrap_or_default())
}

fn parse_inline_matrix(text: &str) -> Result<IntMatrix, CliError> {
    let rows: Result<Vec<Vec<i64>>, CliError> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|entry| {
                    entry.trim().parse::<i64>().map_err(|_| {
                        CliError::Usage(format!("bad matrix entry {:?}", entry.trim()))
                    })
                })
                .collect()
        })
        .collect();
    IntMatrix::new(&rows?).map_err(|e| CliError::Usage(e.to_string()))
}

fn resolve_matrix(spec: &MatrixSpec) -> Result<ModMatrix, CliError> {
    let int_matrix = match (&spec.preset, &spec.matrix) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--preset and --matrix are exclusive".into()))
        }
        (None, None) => {
            return Err(CliError::Usage("one of --preset or --matrix is required".into()))
        }
        (Some(name), None) => match name.as_str() {
            "subadd" => subadd_int_matrix(),
            "perm3" => IntMatrix::new(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])
                .expect("static matrix"),
            other => return Err(CliError::Usage(format!("unknown preset {other:?}"))),
        },
        (None, Some(text)) => parse_inline_matrix(text)?,
    };
    if let Some(m) = spec.m {
        if m != int_matrix.dim() {
            return Err(CliError::Usage(format!(
                "--m {} does not match the {}x{} matrix",
                m,
                int_matrix.dim(),
                int_matrix.dim()
            )));
        }
    }
    let modulus = Modulus::new(spec.n).map_err(CliError::Lib)?;
    Ok(int_matrix.reduce(modulus))
}

fn format_or(default: Format, format: Option<Format>, allowed: &[Format]) -> Result<Format, CliError> {
    let chosen = format.unwrap_or(default);
    if allowed.contains(&chosen) {
        Ok(chosen)
    } else {
        Err(CliError::Usage(
            "format not supported for this command".into(),
        ))
    }
}

/// Write the exact bytes to the output path or standard output.
fn emit(content: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_build(args: GraphArgs) -> Result<(), CliError> {
    let format = format_or(Format::Json, args.format, &[Format::Json, Format::Dot])?;
    let matrix = resolve_matrix(&args.matrix)?;
    let graph = MoveGraph::build_with_budget(&matrix, budget_from(args.size_budget)?)?;
    let content = match format {
        Format::Json => format!("{}\n", graph.document().to_json()),
        Format::Dot => graph.to_dot(),
        _ => unreachable!(),
    };
    emit(&content, &args.output)
}

fn cmd_analyze(args: GraphArgs) -> Result<(), CliError> {
    let format = format_or(Format::Json, args.format, &[Format::Json, Format::Text])?;
    let matrix = resolve_matrix(&args.matrix)?;
    let graph = MoveGraph::build_with_budget(&matrix, budget_from(args.size_budget)?)?;
    let decomposition = graph.decompose();
    let content = match format {
        Format::Json => {
            let json = serde_json_spectrum(decomposition.spectrum());
            format!("{json}\n")
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "spectrum (cycle length x count):");
            for (len, count) in decomposition.spectrum() {
                let _ = writeln!(out, "  {len} x {count}");
            }
            let _ = writeln!(out, "tree vertices: {}", graph.vertex_count() - decomposition.on_cycle_count());
            let _ = writeln!(out, "components: {}", graph.weak_components().count);
            out
        }
        _ => unreachable!(),
    };
    emit(&content, &args.output)
}

/// Spectrum as a JSON object with numeric-ascending keys.
fn serde_json_spectrum(spectrum: &std::collections::BTreeMap<u64, u64>) -> String {
    let mut out = String::from("{");
    for (i, (len, count)) in spectrum.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "\"{len}\":{count}");
    }
    out.push('}');
    out
}

fn cmd_levels(args: LevelsArgs) -> Result<(), CliError> {
    let format = format_or(Format::Json, args.format, &[Format::Json, Format::Text])?;
    let budget = budget_from(args.size_budget)?;
    let partition = LevelPartition::build(args.r, budget)?;
    let report = tree_report(args.r, budget)?;
    let content = match format {
        Format::Json => format!(
            "{{\"partition\":{},\"tree_report\":{}}}\n",
            partition.to_json(),
            report.to_json()
        ),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "r: {}", args.r);
            for (i, level) in partition.levels.iter().enumerate() {
                let _ = writeln!(out, "  |P_{i}| = {}", level.len());
            }
            let _ = writeln!(out, "depth: {}", report.depth);
            let _ = writeln!(out, "inverted perfect binary tree: {}", report.is_inverted_pbt);
            let _ = writeln!(out, "root vertex id: {}", report.root_vertex);
            out
        }
        _ => unreachable!(),
    };
    emit(&content, &args.output)
}

fn cmd_predict(args: PredictArgs) -> Result<(), CliError> {
    let format = format_or(Format::Json, args.format, &[Format::Json, Format::Text])?;
    let prediction = predict(args.p)?;
    let content = match format {
        Format::Json => format!("{}\n", prediction.to_json()),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "p: {}  (p mod 8 = {})", prediction.p, prediction.p % 8);
            let _ = writeln!(out, "t = ord(-4): {}", prediction.t);
            let _ = writeln!(out, "k = 4t: {}", prediction.k);
            match prediction.i_root {
                Some(i) => {
                    let _ = writeln!(out, "i root: {i}");
                }
                None => {
                    let _ = writeln!(out, "i root: none (p = 3 mod 4)");
                }
            }
            let _ = writeln!(out, "s = ord(1 - i): {}", prediction.s);
            match (prediction.secondary_length, prediction.secondary_count) {
                (Some(len), Some(count)) => {
                    let _ = writeln!(out, "secondary cycles: {count} of length {len}");
                }
                _ => {
                    let _ = writeln!(out, "secondary cycles: none");
                }
            }
            let _ = writeln!(
                out,
                "primary cycles: {} of length {}",
                prediction.primary_count, prediction.k
            );
            let _ = writeln!(out, "fixed points: {}", prediction.fixed_points);
            out
        }
        _ => unreachable!(),
    };
    emit(&content, &args.output)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let selection = SuiteSelection::parse(&args.suite)
        .ok_or_else(|| CliError::Usage(format!("unknown suite {:?}", args.suite)))?;
    let config = VerifyConfig {
        odd_n_max: args.n_max,
        pair_product_max: args.pair_max,
        p_max: args.p_max,
        r_max: args.r_max,
        budget: budget_from(args.size_budget)?,
    };
    let report = run_verify(&config, selection)?;
    emit(&format!("{}\n", report.to_json()), &args.output)?;
    if report.all_passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_survey(args: SurveyArgs) -> Result<(), CliError> {
    let format = format_or(Format::Csv, args.format, &[Format::Csv, Format::Json])?;
    let rows = survey(args.p_max)?;
    let content = match format {
        Format::Csv => survey_csv(&rows),
        Format::Json => format!("{}\n", survey_json(&rows)),
        _ => unreachable!(),
    };
    emit(&content, &args.output)
}

fn cmd_oeis(args: OeisArgs) -> Result<(), CliError> {
    let terms = oeis_terms(args.n_max, budget_from(args.size_budget)?)?;
    let mut content = String::new();
    for term in terms {
        let _ = writeln!(content, "{term}");
    }
    emit(&content, &args.output)
}
