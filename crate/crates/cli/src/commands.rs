//! Argument definitions and command execution.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use sgkit::configs::{generate, Generated, GeneratorKind, GeneratorSpec, HESSE_SQRT_M, SIMPLEX_SQRT_M};
use sgkit::grid::{check_grid_theorem, GridSpec};
use sgkit::incidence::{check_sg_bound, enumerate_lines};
use sgkit::kelly::find_witness;
use sgkit::{Backend, Error, FieldTag, PointSet};

use crate::error::CliError;
use crate::format::{
    parse_dataset, parse_grid, serialize_dataset, serialize_grid_data, serialize_values, Dataset, Emit, GridData,
};
use crate::report::{CheckSgResult, EnumerateResult, GridResult, InputInfo, Report, Verdict, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "sgkit", version, about = "Ordinary-line bounds for point sets in C^2 and H^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the minimum-distance witness line and check the incidence bound.
    CheckSg(PointArgs),
    /// List every spanned line with its incidence count.
    Enumerate(PointArgs),
    /// Check the transversal-line bound on a grid A x B.
    Grid(GridArgs),
    /// Write a generated dataset.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Scalar field, C or H.
    #[arg(long)]
    pub field: Option<FieldTag>,
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,
    /// Radicand m of the exact backend Q(sqrt m).
    #[arg(long)]
    pub sqrt_m: Option<u32>,
    /// Relative incidence tolerance of the float backend.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Record wall-clock time in the report (makes output non-deterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Debug, Args)]
pub struct PointArgs {
    /// Dataset file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub input: Option<PathBuf>,
    /// Generate the dataset instead of reading it.
    #[arg(long)]
    pub gen: Option<GeneratorKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Debug, Args)]
pub struct GridArgs {
    /// Grid file with keys "a" and "b".
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub input: Option<PathBuf>,
    /// Generate the grid (random_grid) instead of reading it.
    #[arg(long)]
    pub gen: Option<GeneratorKind>,
    /// |A| for generated grids.
    #[arg(long)]
    pub a: Option<usize>,
    /// |B| for generated grids.
    #[arg(long)]
    pub b: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Debug, Args)]
pub struct GenArgs {
    /// hesse, random_points, random_grid, simplex4, near_collinear or lattice.
    pub kind: GeneratorKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

/// What a command produced: bytes for the output sink and an exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn tol_rel(common: &Common, exact: bool) -> Result<f64, CliError> {
    match common.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(CliError::Invalid(format!("--tol must be positive, got {t}"))),
        Some(_) if exact => Err(CliError::Invalid("--tol applies to the float backend only".into())),
        Some(t) => Ok(t),
        None => Ok(Backend::DEFAULT_TOL_REL),
    }
}

/// Defaults that make `gen <kind>` work without flags.
fn default_backend(kind: GeneratorKind) -> BackendArg {
    match kind {
        GeneratorKind::Hesse | GeneratorKind::Simplex4 | GeneratorKind::Lattice => BackendArg::Exact,
        _ => BackendArg::Float,
    }
}

fn default_m(kind: GeneratorKind) -> u32 {
    match kind {
        GeneratorKind::Hesse => HESSE_SQRT_M,
        GeneratorKind::Simplex4 => SIMPLEX_SQRT_M,
        _ => 1,
    }
}

fn default_field(kind: GeneratorKind) -> FieldTag {
    match kind {
        GeneratorKind::Simplex4 => FieldTag::H,
        _ => FieldTag::C,
    }
}

fn spec_from(
    kind: GeneratorKind,
    common: &Common,
    n: Option<usize>,
    ab: (Option<usize>, Option<usize>),
    eps: Option<f64>,
) -> Result<GeneratorSpec, CliError> {
    let mut spec = GeneratorSpec::new(kind);
    spec.tag = common.field.unwrap_or(default_field(kind));
    let exact = common.backend.unwrap_or(default_backend(kind)) == BackendArg::Exact;
    if !exact && common.sqrt_m.is_some() {
        return Err(CliError::Invalid("--sqrt-m requires the exact backend".into()));
    }
    spec.backend = if exact {
        Backend::Exact { m: common.sqrt_m.unwrap_or(default_m(kind)) }
    } else {
        Backend::Float { tol_rel: tol_rel(common, false)? }
    };
    if exact {
        tol_rel(common, true)?;
    }
    if let Some(n) = n {
        spec.n = n;
    }
    if let Some(a) = ab.0 {
        spec.na = a;
    }
    if let Some(b) = ab.1 {
        spec.nb = b;
    }
    if let Some(eps) = eps {
        spec.eps = eps;
    }
    spec.seed = common.seed.unwrap_or(0);
    Ok(spec)
}

/// Rejects flags that contradict the header of an input file.
fn check_flags(common: &Common, tag: FieldTag, backend: Backend) -> Result<(), CliError> {
    if let Some(f) = common.field {
        if f != tag {
            return Err(CliError::Invalid(format!("--field {f} contradicts the input field {tag}")));
        }
    }
    let (kind, m) = match backend {
        Backend::Exact { m } => (BackendArg::Exact, Some(m)),
        Backend::Float { .. } => (BackendArg::Float, None),
    };
    if let Some(b) = common.backend {
        if b != kind {
            return Err(CliError::Invalid(format!("--backend {b:?} contradicts the input file").to_lowercase()));
        }
    }
    if let Some(want) = common.sqrt_m {
        if Some(want) != m {
            return Err(CliError::Invalid(format!("--sqrt-m {want} contradicts the input file")));
        }
    }
    Ok(())
}

struct Loaded<T> {
    data: T,
    input: InputInfo,
    seed: Option<u64>,
}

fn load_points(args: &PointArgs) -> Result<Loaded<Dataset>, CliError> {
    if let Some(path) = &args.input {
        let text = read(path)?;
        let data = parse_dataset(&text, tol_rel(&args.common, false)?)?;
        tol_rel(&args.common, matches!(data, Dataset::Exact { .. }))?;
        check_flags(&args.common, data.tag(), data.backend())?;
        let input = InputInfo { source: path.display().to_string(), sha256: sha256_hex(text.as_bytes()) };
        return Ok(Loaded { data, input, seed: args.common.seed });
    }
    let kind = args.gen.expect("clap requires --input or --gen");
    let spec = spec_from(kind, &args.common, args.n, (None, None), args.eps)?;
    let data = match generate(&spec)? {
        Generated::ExactPoints(set) => Dataset::Exact { m: exact_m(spec.backend), set },
        Generated::FloatPoints(set) => Dataset::Float { set },
        _ => return Err(CliError::Invalid(format!("{kind:?} does not generate a point set").to_lowercase())),
    };
    let input = InputInfo { source: format!("gen:{}", kind_name(kind)), sha256: sha256_hex(serialize_dataset(&data).as_bytes()) };
    Ok(Loaded { data, input, seed: Some(spec.seed) })
}

fn load_grid(args: &GridArgs) -> Result<Loaded<GridData>, CliError> {
    if let Some(path) = &args.input {
        let text = read(path)?;
        let data = parse_grid(&text, tol_rel(&args.common, false)?)?;
        tol_rel(&args.common, matches!(data, GridData::Exact { .. }))?;
        check_flags(&args.common, data.tag(), data.backend())?;
        let input = InputInfo { source: path.display().to_string(), sha256: sha256_hex(text.as_bytes()) };
        return Ok(Loaded { data, input, seed: args.common.seed });
    }
    let kind = args.gen.expect("clap requires --input or --gen");
    let spec = spec_from(kind, &args.common, None, (args.a, args.b), None)?;
    let data = match generate(&spec)? {
        Generated::FloatGrid(grid) => GridData::Float { grid: grid.with_tol_rel(tol_rel(&args.common, false)?) },
        _ => return Err(CliError::Invalid(format!("{kind:?} does not generate a grid").to_lowercase())),
    };
    let input = InputInfo { source: format!("gen:{}", kind_name(kind)), sha256: sha256_hex(serialize_grid_data(&data).as_bytes()) };
    Ok(Loaded { data, input, seed: Some(spec.seed) })
}

fn exact_m(b: Backend) -> u32 {
    match b {
        Backend::Exact { m } => m,
        Backend::Float { .. } => unreachable!("exact data has an exact backend"),
    }
}

pub fn kind_name(kind: GeneratorKind) -> &'static str {
    match kind {
        GeneratorKind::Hesse => "hesse",
        GeneratorKind::RandomPoints => "random_points",
        GeneratorKind::RandomGrid => "random_grid",
        GeneratorKind::Simplex4 => "simplex4",
        GeneratorKind::NearCollinear => "near_collinear",
        GeneratorKind::Lattice => "lattice",
    }
}

fn is_hypothesis(e: &Error) -> bool {
    matches!(e, Error::HypothesisViolation(_) | Error::TooFewPoints { .. })
}

/// Result of the computation proper, before the report envelope is added.
type Computed<T> = Result<(Verdict, T), Error>;

fn check_sg_on<R: Emit>(set: &PointSet<R>) -> Computed<CheckSgResult> {
    let check = check_sg_bound(set, set.tag())?;
    let witness = find_witness(set)?;
    let verdict = if check.passed && witness.passed() { Verdict::Pass } else { Verdict::Fail };
    Ok((verdict, CheckSgResult::new(set.len(), &check, &witness, set.tag())))
}

fn enumerate_on<R: Emit>(set: &PointSet<R>) -> Computed<EnumerateResult> {
    let report = enumerate_lines(set)?;
    Ok((Verdict::Pass, EnumerateResult::new(set.len(), &report, set.tag())))
}

fn grid_on<R: Emit>(grid: &GridSpec<R>) -> Computed<GridResult> {
    let report = check_grid_theorem(grid)?;
    let projection_ok = report.projection.as_ref().is_none_or(|p| p.passed());
    let verdict = if report.verdict && projection_ok { Verdict::Pass } else { Verdict::Fail };
    Ok((verdict, GridResult::new(grid, &report)))
}

fn finish<T: Serialize>(
    command: &'static str,
    (input, seed): (InputInfo, Option<u64>),
    tag: FieldTag,
    backend: Backend,
    computed: Computed<T>,
    started: Instant,
    common: &Common,
) -> Result<Outcome, CliError> {
    let (verdict, error, result) = match computed {
        Ok((v, r)) => (v, None, Some(r)),
        Err(e) if is_hypothesis(&e) => (Verdict::HypothesisViolation, Some(e.to_string()), None),
        Err(e) => return Err(e.into()),
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command,
        input,
        seed,
        field: tag.as_str(),
        backend: backend.into(),
        verdict,
        error,
        result,
        timing_ms: common.timing.then(|| started.elapsed().as_secs_f64() * 1e3),
    };
    let output = match common.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => crate::report::to_text(&report),
    };
    Ok(Outcome { output, exit_code: verdict.exit_code() })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let started = Instant::now();
    match &cli.command {
        Command::CheckSg(args) | Command::Enumerate(args) => {
            let loaded = load_points(args)?;
            let (tag, backend) = (loaded.data.tag(), loaded.data.backend());
            let meta = (loaded.input, loaded.seed);
            if matches!(cli.command, Command::CheckSg(_)) {
                let c = match &loaded.data {
                    Dataset::Exact { set, .. } => check_sg_on(set),
                    Dataset::Float { set } => check_sg_on(set),
                };
                finish("check-sg", meta, tag, backend, c, started, &args.common)
            } else {
                let c = match &loaded.data {
                    Dataset::Exact { set, .. } => enumerate_on(set),
                    Dataset::Float { set } => enumerate_on(set),
                };
                finish("enumerate", meta, tag, backend, c, started, &args.common)
            }
        }
        Command::Grid(args) => {
            let loaded = load_grid(args)?;
            let (tag, backend) = (loaded.data.tag(), loaded.data.backend());
            let c = match &loaded.data {
                GridData::Exact { grid, .. } => grid_on(grid),
                GridData::Float { grid } => grid_on(grid),
            };
            finish("grid", (loaded.input, loaded.seed), tag, backend, c, started, &args.common)
        }
        Command::Gen(args) => {
            let spec = spec_from(args.kind, &args.common, args.n, (args.a, args.b), args.eps)?;
            let output = match generate(&spec)? {
                Generated::ExactPoints(set) => serialize_dataset(&Dataset::Exact { m: exact_m(spec.backend), set }),
                Generated::FloatPoints(set) => serialize_dataset(&Dataset::Float { set }),
                Generated::FloatGrid(grid) => serialize_grid_data(&GridData::Float { grid }),
                Generated::ExactScalars(v) => serialize_values(spec.tag, spec.backend, &v),
                Generated::FloatScalars(v) => serialize_values(spec.tag, spec.backend, &v),
            };
            Ok(Outcome { output, exit_code: 0 })
        }
    }
}

impl Command {
    pub fn output(&self) -> Option<&PathBuf> {
        match self {
            Command::CheckSg(a) | Command::Enumerate(a) => a.common.output.as_ref(),
            Command::Grid(a) => a.common.output.as_ref(),
            Command::Gen(a) => a.common.output.as_ref(),
        }
    }
}
