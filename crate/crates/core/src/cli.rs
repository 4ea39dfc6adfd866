//! Command-line front end. Exit codes: 0 success, 1 verification or
//! acceptance failure, 2 infeasible or node budget exhausted, 3 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{bound_report, bounds_csv, weighting_generic2, weighting_generic3, BoundOptions};
use crate::construct::{construct, Scheme};
use crate::cover::{check_weighting, cov, cov_lp, SolveOptions, WeightingJson};
use crate::error::{Error, Result};
use crate::experiment::{run_acceptance, AcceptanceOptions};
use crate::grid::{
    make_conical, make_fullgrid, make_fullgrid_random, make_generic2, make_generic3, make_halfgrid, make_halfrect,
    make_simplex, Grid, GridKind, PointId,
};
use crate::incidence::{verify_cover, CoverJson};
use crate::opt::{ilp_solve, lp_solve_with, parse_lp, Certificate, IlpOptions, IlpStatus, LpStatus, PivotRule};
use crate::scalar::Scalar;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;

pub const NODE_LIMIT_ENV: &str = "GRIDCOVER_NODE_LIMIT";

#[derive(Parser, Debug)]
#[command(name = "gridcover", version, about = "Exact k-fold hyperplane covers of grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a grid and write it as JSON.
    Gen(GenArgs),
    /// Compute cov_k exactly, or its LP relaxation with --lp.
    Solve(SolveArgs),
    /// Build a known cover, verify it, and compare with its claimed size.
    Construct(ConstructArgs),
    /// Check a dual weighting (from a file, a built-in scheme, or the LP).
    Certify(CertifyArgs),
    /// Tabulate every lower and upper bound that applies.
    Bound(BoundArgs),
    /// Verify a cover file against a grid.
    Verify(VerifyArgs),
    /// Solve a program in the plain-text LP format.
    Lp(LpArgs),
    /// Seeded experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Subcommand, Debug)]
enum ExperimentCommand {
    /// Run the acceptance suite; CSV to --out or stdout, verdicts to stderr.
    Acceptance(AcceptanceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    /// Output file, written atomically; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Grid JSON file, `-` for stdin, or `gen:KIND,key=value,...`
    /// (keys n, m, dim, seed, s1, s2; axis values separated by `;`).
    #[arg(long)]
    grid: String,
    /// `none`, `vertex`, or point indices such as `2,0`. Defaults to
    /// `vertex` for generic2, generic3 and simplex grids, else `none`.
    #[arg(long)]
    missing: Option<String>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Explicit first axis, e.g. `0,1,5/2` (halfgrid and fullgrid).
    #[arg(long)]
    s1: Option<String>,
    /// Explicit second axis.
    #[arg(long)]
    s2: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Branch-and-bound node budget.
    #[arg(long, env = NODE_LIMIT_ENV, default_value_t = crate::opt::DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    /// Use only covering sets with at least two points as columns.
    #[arg(long)]
    paper_literal: bool,
    /// Do not seed the search with a known construction.
    #[arg(long)]
    no_warm_start: bool,
}

impl SolverArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            paper_literal: self.paper_literal,
            ilp: IlpOptions {
                node_limit: self.node_limit,
                ..Default::default()
            },
            warm_start: !self.no_warm_start,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    k: u64,
    /// Solve the LP relaxation and report its optimal dual weighting.
    #[arg(long)]
    lp: bool,
    /// Also write the optimal cover (or, with --lp, the weighting) as a
    /// standalone JSON file.
    #[arg(long)]
    artifact: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// rows, generic2, generic3, halfrect, simplex, or fullgrid.
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    k: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    k: u64,
    /// Weighting JSON file; otherwise the built-in scheme for the grid kind,
    /// or the LP-optimal dual when there is none.
    #[arg(long)]
    weighting: Option<PathBuf>,
    /// Evaluate the unrestricted face weights of the 3D scheme.
    #[arg(long)]
    literal_weighting: bool,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    k: u64,
    /// Include the LP relaxation.
    #[arg(long)]
    lp: bool,
    /// Include the exact integer optimum.
    #[arg(long)]
    ilp: bool,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Grid to check against; optional when the cover embeds its grid.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    missing: Option<String>,
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    k: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct LpArgs {
    /// Program file, or `-` for stdin.
    #[arg(long)]
    file: String,
    /// Require every variable to be integral.
    #[arg(long)]
    integer: bool,
    #[arg(long, value_enum, default_value_t = RuleArg::Bland)]
    rule: RuleArg,
    #[arg(long, env = NODE_LIMIT_ENV, default_value_t = crate::opt::DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RuleArg {
    Bland,
    Dantzig,
}

#[derive(Args, Debug)]
struct AcceptanceArgs {
    /// Comma-separated criteria to run (default: all).
    #[arg(long, value_delimiter = ',')]
    criteria: Option<Vec<u8>>,
    #[arg(long, env = NODE_LIMIT_ENV, default_value_t = crate::opt::DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Everything that determines a run's output; echoed in JSON results.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_fingerprint: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub missing: Option<Vec<usize>>,
    pub paper_literal: bool,
    pub literal_weighting: bool,
    pub node_limit: Option<u64>,
}

impl RunConfig {
    fn new(command: &'static str) -> RunConfig {
        RunConfig {
            command,
            grid: None,
            grid_fingerprint: None,
            k: None,
            missing: None,
            paper_literal: false,
            literal_weighting: false,
            node_limit: None,
        }
    }

    fn with_grid(mut self, source: &str, g: &Grid, missing: Option<PointId>) -> RunConfig {
        self.grid = Some(source.to_string());
        self.grid_fingerprint = Some(g.fingerprint());
        self.missing = missing.map(|m| g.point(m).indices.clone());
        self
    }
}

/// A failure that already carries its exit code.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match e {
            Error::BadInput(_) | Error::Json(_) | Error::Io(_) => EXIT_BAD_INPUT,
            Error::Infeasible(_) | Error::Budget { .. } => EXIT_INFEASIBLE,
            Error::Internal(_) => EXIT_FAILED,
        };
        Exit(code, e.to_string())
    }
}

/// Parses `argv` (including the program name), runs the command, and
/// returns the exit code. Diagnostics go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, Exit> {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Construct(a) => construct_cmd(a),
        Command::Certify(a) => certify(a),
        Command::Bound(a) => bound(a),
        Command::Verify(a) => verify(a),
        Command::Lp(a) => lp(a),
        Command::Experiment(ExperimentCommand::Acceptance(a)) => acceptance(a),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::BadInput(format!("{path}: {e}")))
    }
}

/// Writes to a sibling temporary file and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    emit(out, &s)
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn parse_axis(s: &str, sep: char) -> Result<Vec<Scalar>> {
    s.split(sep)
        .map(|t| {
            t.trim()
                .parse::<Scalar>()
                .map_err(|e| Error::BadInput(format!("axis value {t:?}: {e}")))
        })
        .collect()
}

struct GenSpec {
    kind: GridKind,
    n: Option<usize>,
    m: Option<usize>,
    dim: usize,
    seed: u64,
    s1: Option<Vec<Scalar>>,
    s2: Option<Vec<Scalar>>,
}

fn generate(spec: &GenSpec) -> Result<Grid> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Error::BadInput(format!("--{name} is required for {}", spec.kind)))
    };
    let int_axis = |len: usize| (0..len).map(Scalar::from).collect::<Vec<_>>();
    match spec.kind {
        GridKind::Conical => make_conical(need(spec.n, "n")?, spec.seed),
        GridKind::Halfgrid => {
            let s1 = match &spec.s1 {
                Some(a) => a.clone(),
                None => int_axis(need(spec.n, "n")?),
            };
            let s2 = match &spec.s2 {
                Some(a) => a.clone(),
                None => int_axis(need(spec.m, "m")?),
            };
            make_halfgrid(s1, s2)
        }
        GridKind::Halfrect => make_halfrect(need(spec.m, "m")?, need(spec.n, "n")?),
        GridKind::Simplex => make_simplex(spec.dim, need(spec.n, "n")?),
        GridKind::Fullgrid => match (&spec.s1, &spec.s2) {
            (Some(a), Some(b)) => make_fullgrid(a.clone(), b.clone()),
            (None, None) => {
                let n = need(spec.n, "n")?;
                make_fullgrid_random(n, spec.m.unwrap_or(n), spec.seed)
            }
            _ => Err(Error::BadInput("give both --s1 and --s2 or neither".into())),
        },
        GridKind::Generic2 => make_generic2(need(spec.n, "n")?, spec.seed),
        GridKind::Generic3 => make_generic3(need(spec.n, "n")?, spec.seed),
    }
}

/// `gen:KIND,key=value,...` with axis values separated by `;`.
fn parse_gen_spec(s: &str) -> Result<GenSpec> {
    let mut parts = s.split(',');
    let kind: GridKind = parts.next().unwrap_or_default().trim().parse()?;
    let mut spec = GenSpec {
        kind,
        n: None,
        m: None,
        dim: 2,
        seed: 0,
        s1: None,
        s2: None,
    };
    for part in parts {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::BadInput(format!("expected key=value in grid spec, got {part:?}")))?;
        let int = || {
            value
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::BadInput(format!("{key}: not an integer: {value:?}")))
        };
        match key.trim() {
            "n" => spec.n = Some(int()? as usize),
            "m" => spec.m = Some(int()? as usize),
            "dim" => spec.dim = int()? as usize,
            "seed" => spec.seed = int()?,
            "s1" => spec.s1 = Some(parse_axis(value, ';')?),
            "s2" => spec.s2 = Some(parse_axis(value, ';')?),
            other => return Err(Error::BadInput(format!("unknown grid spec key {other:?}"))),
        }
    }
    Ok(spec)
}

fn load_grid(source: &str) -> Result<Grid> {
    match source.strip_prefix("gen:") {
        Some(spec) => generate(&parse_gen_spec(spec)?),
        None => Grid::from_json_str(&read_input(source)?),
    }
}

/// Resolves `none | vertex | i,j(,k)`, defaulting by grid kind.
fn resolve_missing(g: &Grid, spec: Option<&str>) -> Result<Option<PointId>> {
    let spec = spec.unwrap_or(match g.kind() {
        GridKind::Generic2 | GridKind::Generic3 | GridKind::Simplex => "vertex",
        _ => "none",
    });
    match spec.trim() {
        "none" => Ok(None),
        "vertex" => g
            .vertex()
            .map(Some)
            .ok_or_else(|| Error::BadInput("grid has no vertex point".into())),
        idx => {
            let indices: Vec<usize> = idx
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::BadInput(format!("bad missing point {idx:?}")))
                })
                .collect::<Result<_>>()?;
            g.find(&indices)
                .map(Some)
                .ok_or_else(|| Error::BadInput(format!("missing point {indices:?} is not in the grid")))
        }
    }
}

fn grid_and_missing(a: &GridArgs) -> Result<(Grid, Option<PointId>)> {
    let g = load_grid(&a.grid)?;
    let missing = resolve_missing(&g, a.missing.as_deref())?;
    Ok((g, missing))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize")
}

fn gen(a: GenArgs) -> Result<i32, Exit> {
    let kind: GridKind = a.kind.parse()?;
    let spec = GenSpec {
        kind,
        n: a.n,
        m: a.m,
        dim: a.dim,
        seed: a.seed,
        s1: a.s1.as_deref().map(|s| parse_axis(s, ',')).transpose()?,
        s2: a.s2.as_deref().map(|s| parse_axis(s, ',')).transpose()?,
    };
    let g = generate(&spec)?;
    match a.output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&g.to_json()).map_err(Error::from)?;
            s.push('\n');
            emit(&a.output.out, &s)?;
        }
        Format::Csv => {
            let header: Vec<String> = (0..g.dim())
                .map(|t| format!("i{t}"))
                .chain((0..g.dim()).map(|t| format!("x{t}")))
                .collect();
            let rows: Vec<Vec<String>> = g
                .points()
                .iter()
                .map(|p| {
                    p.indices
                        .iter()
                        .map(usize::to_string)
                        .chain(p.coords.iter().map(Scalar::to_string))
                        .collect()
                })
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            emit(&a.output.out, &csv_table(&header, &rows)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn missing_str(g: &Grid, m: Option<PointId>) -> String {
    match m {
        Some(p) => g
            .point(p)
            .indices
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        None => "none".into(),
    }
}

fn solve(a: SolveArgs) -> Result<i32, Exit> {
    let (g, missing) = grid_and_missing(&a.grid)?;
    let mut config = RunConfig::new("solve").with_grid(&a.grid.grid, &g, missing);
    config.k = Some(a.k);
    config.paper_literal = a.solver.paper_literal;
    if a.lp {
        let r = cov_lp(&g, a.k, missing, a.solver.paper_literal)?;
        if let Some(path) = &a.artifact {
            emit_json(&Some(path.clone()), &to_value(&r.weighting.to_json(&g)))?;
        }
        match a.output.format {
            Format::Json => emit_json(
                &a.output.out,
                &json!({
                    "config": config,
                    "relaxation": true,
                    "value": r.value,
                    "candidates": r.candidates,
                    "weighting": r.weighting.to_json(&g),
                }),
            )?,
            Format::Csv => {
                let row = vec![
                    a.k.to_string(),
                    missing_str(&g, missing),
                    r.value.to_string(),
                    r.candidates.to_string(),
                ];
                emit(
                    &a.output.out,
                    &csv_table(&["k", "missing", "lp_value", "candidates"], &[row])?,
                )?
            }
        }
        return Ok(EXIT_OK);
    }
    config.node_limit = Some(a.solver.node_limit);
    let r = cov(&g, a.k, missing, &a.solver.options())?;
    if let Some(path) = &a.artifact {
        emit_json(&Some(path.clone()), &to_value(&r.cover.to_json(&g)))?;
    }
    match a.output.format {
        Format::Json => emit_json(
            &a.output.out,
            &json!({
                "config": config,
                "value": r.value,
                "root_lp": r.root_lp,
                "stats": r.stats,
                "cover": r.cover.to_json(&g),
            }),
        )?,
        Format::Csv => {
            let row = vec![
                a.k.to_string(),
                missing_str(&g, missing),
                r.value.to_string(),
                r.root_lp.map(|v| v.to_string()).unwrap_or_default(),
                r.stats.nodes.to_string(),
                r.stats.candidates.to_string(),
            ];
            let header = ["k", "missing", "value", "root_lp", "nodes", "candidates"];
            emit(&a.output.out, &csv_table(&header, &[row])?)?
        }
    }
    Ok(EXIT_OK)
}

fn construct_cmd(a: ConstructArgs) -> Result<i32, Exit> {
    let scheme: Scheme = a.scheme.parse()?;
    let g = load_grid(&a.grid.grid)?;
    // Only the half-rectangular scheme takes a missing point; the others
    // fix their own.
    let point = match scheme {
        Scheme::Halfrect => resolve_missing(&g, a.grid.missing.as_deref())?,
        _ => None,
    };
    let r = construct(&g, scheme, a.k, point)?;
    let missing = r.missing.as_ref().and_then(|idx| g.find(idx));
    let mut config = RunConfig::new("construct").with_grid(&a.grid.grid, &g, missing);
    config.k = Some(a.k);
    match a.output.format {
        Format::Json => {
            let mut v = to_value(&r);
            v["config"] = to_value(&config);
            emit_json(&a.output.out, &v)?
        }
        Format::Csv => {
            let row = vec![
                r.scheme.to_string(),
                r.k.to_string(),
                r.size.to_string(),
                r.claimed_bound.to_string(),
                r.verified.to_string(),
                r.min_coverage.to_string(),
            ];
            let header = ["scheme", "k", "size", "claimed_bound", "verified", "min_coverage"];
            emit(&a.output.out, &csv_table(&header, &[row])?)?
        }
    }
    Ok(if r.verified && Scalar::from(r.size) <= r.claimed_bound {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn certify(a: CertifyArgs) -> Result<i32, Exit> {
    let (g, missing) = grid_and_missing(&a.grid)?;
    let mut extra = serde_json::Map::new();
    let (source, wt) = match &a.weighting {
        Some(path) => {
            let raw: WeightingJson =
                serde_json::from_str(&read_input(&path.to_string_lossy())?).map_err(Error::from)?;
            ("file", raw.into_weighting(&g)?)
        }
        None => match g.kind() {
            GridKind::Generic2 if missing == g.vertex() => ("generic2", weighting_generic2(&g, a.k)?),
            GridKind::Generic3 if missing == g.vertex() => {
                let w = weighting_generic3(&g, a.k, a.literal_weighting)?;
                extra.insert("axes".into(), to_value(&w.axes));
                extra.insert("faces".into(), to_value(&w.faces));
                extra.insert("interior".into(), to_value(&w.interior));
                ("generic3", w.weighting)
            }
            _ => ("lp_dual", cov_lp(&g, a.k, missing, a.solver.paper_literal)?.weighting),
        },
    };
    let report = check_weighting(&g, &wt, a.k, a.solver.paper_literal);
    let mut config = RunConfig::new("certify").with_grid(&a.grid.grid, &g, wt.missing);
    config.k = Some(a.k);
    config.paper_literal = a.solver.paper_literal;
    config.literal_weighting = a.literal_weighting;
    match a.output.format {
        Format::Json => {
            let mut v = json!({
                "config": config,
                "source": source,
                "report": report,
                "weighting": wt.to_json(&g),
            });
            v.as_object_mut().expect("object").extend(extra);
            emit_json(&a.output.out, &v)?
        }
        Format::Csv => {
            let row = vec![
                source.to_string(),
                report.objective.to_string(),
                report.max_sum.to_string(),
                report.ok.to_string(),
                report.violations.len().to_string(),
            ];
            let header = ["source", "objective", "max_sum", "ok", "violations"];
            emit(&a.output.out, &csv_table(&header, &[row])?)?
        }
    }
    Ok(if report.ok { EXIT_OK } else { EXIT_FAILED })
}

fn bound(a: BoundArgs) -> Result<i32, Exit> {
    let (g, missing) = grid_and_missing(&a.grid)?;
    let opts = BoundOptions {
        lp: a.lp,
        ilp: a.ilp,
        solve: a.solver.options(),
    };
    let rows = bound_report(&g, a.k, missing, &opts)?;
    match a.output.format {
        Format::Csv => emit(&a.output.out, &bounds_csv(&rows)?)?,
        Format::Json => {
            let mut config = RunConfig::new("bound").with_grid(&a.grid.grid, &g, missing);
            config.k = Some(a.k);
            config.paper_literal = a.solver.paper_literal;
            config.node_limit = a.ilp.then_some(a.solver.node_limit);
            emit_json(&a.output.out, &json!({ "config": config, "bounds": rows }))?
        }
    }
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs) -> Result<i32, Exit> {
    // Accept a bare cover or any result object that embeds one.
    let mut v: Value = serde_json::from_str(&read_input(&a.cover.to_string_lossy())?).map_err(Error::from)?;
    if let Some(inner) = v.get_mut("cover") {
        v = inner.take();
    }
    let raw: CoverJson = serde_json::from_value(v).map_err(Error::from)?;
    let (g, source) = match (&a.grid, raw.inline_grid()) {
        (Some(src), _) => (load_grid(src)?, src.clone()),
        (None, Some(g)) => (g?, "inline".to_string()),
        (None, None) => return Err(Error::BadInput("cover references its grid by hash; pass --grid".into()).into()),
    };
    let missing = resolve_missing(&g, a.missing.as_deref())?;
    let cover = raw.into_cover(Some(&g))?;
    let report = verify_cover(&g, &cover, a.k, missing)?;
    match a.output.format {
        Format::Json => {
            let mut config = RunConfig::new("verify").with_grid(&source, &g, missing);
            config.k = Some(a.k);
            emit_json(
                &a.output.out,
                &json!({ "config": config, "size": cover.size(), "report": report }),
            )?
        }
        Format::Csv => {
            let row = vec![
                cover.size().to_string(),
                report.ok.to_string(),
                report.min_coverage.to_string(),
                report.violations.len().to_string(),
            ];
            emit(
                &a.output.out,
                &csv_table(&["size", "ok", "min_coverage", "violations"], &[row])?,
            )?
        }
    }
    Ok(if report.ok { EXIT_OK } else { EXIT_FAILED })
}

fn lp(a: LpArgs) -> Result<i32, Exit> {
    let p = parse_lp(&read_input(&a.file)?)?;
    let rule = match a.rule {
        RuleArg::Bland => PivotRule::Bland,
        RuleArg::Dantzig => PivotRule::Dantzig,
    };
    let (v, code) = if a.integer {
        let opts = IlpOptions {
            node_limit: a.node_limit,
            rule,
            ..Default::default()
        };
        let sol = ilp_solve(&p, &opts)?;
        let code = if sol.status == IlpStatus::Optimal {
            EXIT_OK
        } else {
            EXIT_INFEASIBLE
        };
        (
            json!({ "status": sol.status, "objective": sol.objective, "x": sol.x, "stats": sol.stats }),
            code,
        )
    } else {
        let sol = lp_solve_with(&p, rule)?;
        let mut v = json!({ "status": sol.status, "pivots": sol.pivots });
        match &sol.certificate {
            Some(Certificate::Farkas(y)) => v["farkas"] = to_value(y),
            Some(Certificate::Ray { point, direction }) => {
                v["ray"] = json!({ "point": point, "direction": direction });
            }
            None => {
                v["objective"] = to_value(&sol.objective);
                v["x"] = to_value(&sol.x);
                v["y"] = to_value(&sol.y);
            }
        }
        let code = if sol.status == LpStatus::Optimal {
            EXIT_OK
        } else {
            EXIT_INFEASIBLE
        };
        (v, code)
    };
    if a.output.format == Format::Csv {
        return Err(Error::BadInput("the lp command writes JSON only".into()).into());
    }
    emit_json(&a.output.out, &v)?;
    Ok(code)
}

fn acceptance(a: AcceptanceArgs) -> Result<i32, Exit> {
    let mut opts = AcceptanceOptions {
        node_limit: a.node_limit,
        ..Default::default()
    };
    if let Some(c) = a.criteria {
        opts.criteria = c;
    }
    let result = run_acceptance(&opts)?;
    emit(&a.out, &result.csv())?;
    for v in &result.verdicts {
        eprintln!("{}", v.line());
    }
    Ok(if result.passed() { EXIT_OK } else { EXIT_FAILED })
}
