//! Command-line front end: matrix-set ingestion, dispatch and reports.
//!
//! [`run`] never prints; it returns the exit status and the report text so
//! that the binary and the tests share one code path. JSON reports are
//! single-line and, unless timing is requested, a pure function of the
//! input bytes, the configuration and the crate version.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{
    check_inessential_with, generated_subalgebra, ideal_chain_monotonicity, jacobson_radical,
    quotient, Ideal, InessentialOptions,
};
use crate::bounds::{continuity_probe, refine_with, verify_berger_wang, ProbeOptions, RefineOptions};
use crate::error::{Error, Result};
use crate::lift::{check_pass_identities_with, PassOptions};
use crate::matrix::{Matrix, C64};
use crate::set::{word_count, Enumerator, MatrixSet, DEFAULT_WORD_BUDGET};

pub const MAX_DIM: usize = 64;
pub const MAX_GENERATORS: usize = 8;
pub const MAX_WORDS: u64 = DEFAULT_WORD_BUDGET;

/// Exit status for a valid run whose criterion was not met.
pub const EXIT_NOT_MET: i32 = 2;
/// Exit status for hard errors.
pub const EXIT_ERROR: i32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "jsr", version, about = "Joint spectral radius bounds and matrix-algebra radicals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "JSR_WORKERS", global = true)]
    pub workers: Option<usize>,
    /// Add wall time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, default_value_t = MAX_DIM, global = true)]
    pub max_dim: usize,
    #[arg(long, default_value_t = MAX_GENERATORS, global = true)]
    pub max_generators: usize,
    #[arg(long, default_value_t = MAX_WORDS, global = true)]
    pub max_words: u64,
}

impl Default for Common {
    fn default() -> Self {
        Self {
            format: OutputFormat::Text,
            workers: None,
            timing: false,
            max_dim: MAX_DIM,
            max_generators: MAX_GENERATORS,
            max_words: MAX_WORDS,
        }
    }
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Exhaustive depth-n sandwich r_n ≤ ρ ≤ β_n.
    Bounds {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Branch-and-bound refinement to a target width.
    Refine {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        width: f64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Checks that product spectral radii and norms meet within tol.
    VerifyBw {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Compares the set with its lift X ↦ A·X·B.
    LiftCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Generated algebra, Jacobson radical and quotient dimensions.
    Radical { input: PathBuf },
    /// Compares ρ(M) with ρ of its image modulo the radical.
    Inessential {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        width: f64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Depth-n bounds along a chain of ideals.
    Chain {
        input: PathBuf,
        /// JSON file {"ideals": [[matrix, ...], ...]}; each entry lists
        /// generators of one ideal. Defaults to (0, radical).
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Interval movement under random perturbations of size eps.
    Continuity {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.03, 0.01])]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-3)]
        width: f64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bounds { .. } => "bounds",
            Command::Refine { .. } => "refine",
            Command::VerifyBw { .. } => "verify-bw",
            Command::LiftCheck { .. } => "lift-check",
            Command::Radical { .. } => "radical",
            Command::Inessential { .. } => "inessential",
            Command::Chain { .. } => "chain",
            Command::Continuity { .. } => "continuity",
        }
    }

    pub fn input(&self) -> &Path {
        match self {
            Command::Bounds { input, .. }
            | Command::Refine { input, .. }
            | Command::VerifyBw { input, .. }
            | Command::LiftCheck { input, .. }
            | Command::Radical { input }
            | Command::Inessential { input, .. }
            | Command::Chain { input, .. }
            | Command::Continuity { input, .. } => input,
        }
    }
}

/// A parsed invocation.
pub type RunConfig = Cli;

/// Exit status and report text of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub report: String,
}

#[derive(Deserialize)]
struct RawMatrix {
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
struct RawSet {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    matrices: Vec<RawMatrix>,
}

#[derive(Deserialize)]
struct RawChain {
    ideals: Vec<Vec<RawMatrix>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn utf8(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 1,
        column: e.valid_up_to() + 1,
        message: "input is not UTF-8".into(),
    })
}

fn build_matrix(index: usize, dim: usize, raw: &RawMatrix) -> Result<Matrix> {
    let check = |part: &str, rows: &[Vec<f64>]| -> Result<()> {
        if rows.len() != dim {
            return Err(Error::Shape {
                index,
                message: format!("\"{part}\" has {} rows, expected {dim}", rows.len()),
            });
        }
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != dim) {
            return Err(Error::Shape {
                index,
                message: format!("\"{part}\" row {r} has {} entries, expected {dim}", row.len()),
            });
        }
        Ok(())
    };
    check("re", &raw.re)?;
    if let Some(im) = &raw.im {
        check("im", im)?;
    }
    let data = (0..dim * dim)
        .map(|k| {
            let (i, j) = (k / dim, k % dim);
            let im = raw.im.as_ref().map_or(0.0, |m| m[i][j]);
            C64::new(raw.re[i][j], im)
        })
        .collect();
    Matrix::new(dim, data).map_err(|e| Error::Shape {
        index,
        message: e.to_string(),
    })
}

/// Parses a matrix-set document with the default caps.
pub fn parse_matrix_set(text: &str) -> Result<MatrixSet> {
    parse_matrix_set_capped(text, MAX_DIM, MAX_GENERATORS)
}

fn parse_matrix_set_capped(text: &str, max_dim: usize, max_generators: usize) -> Result<MatrixSet> {
    let raw: RawSet = parse_json(text)?;
    if raw.dim == 0 {
        return Err(Error::InvalidMatrix("dim must be at least 1".into()));
    }
    if raw.dim > max_dim {
        return Err(Error::DimensionOverflow {
            dim: raw.dim,
            cap: max_dim,
        });
    }
    if raw.matrices.len() > max_generators {
        return Err(Error::Config(format!(
            "{} generators exceed the cap of {max_generators}",
            raw.matrices.len()
        )));
    }
    let gens = raw
        .matrices
        .iter()
        .enumerate()
        .map(|(i, m)| build_matrix(i, raw.dim, m))
        .collect::<Result<Vec<_>>>()?;
    let set = MatrixSet::new(gens)?;
    Ok(match raw.name {
        Some(n) => set.with_name(n),
        None => set,
    })
}

/// Reads a matrix set from a JSON file.
pub fn load_matrix_set(path: impl AsRef<Path>) -> Result<MatrixSet> {
    parse_matrix_set(utf8(&read(path.as_ref())?)?)
}

fn load_chain(path: &Path, set: &MatrixSet) -> Result<Vec<Vec<Matrix>>> {
    let bytes = read(path)?;
    let raw: RawChain = parse_json(utf8(&bytes)?)?;
    raw.ideals
        .iter()
        .map(|ms| {
            ms.iter()
                .enumerate()
                .map(|(i, m)| build_matrix(i, set.dim(), m))
                .collect()
        })
        .collect()
}

fn check_config(cli: &Cli) -> Result<()> {
    let c = &cli.common;
    if c.max_dim > MAX_DIM || c.max_generators > MAX_GENERATORS || c.max_words > MAX_WORDS {
        return Err(Error::Config("caps may only be lowered".into()));
    }
    if c.max_dim == 0 || c.max_generators == 0 || c.max_words == 0 {
        return Err(Error::Config("caps must be positive".into()));
    }
    if c.workers == Some(0) {
        return Err(Error::Config("workers must be at least 1".into()));
    }
    let positive = |name: &str, x: f64| {
        if x > 0.0 && x.is_finite() {
            Ok(())
        } else {
            Err(Error::Config(format!("{name} must be positive, got {x}")))
        }
    };
    let budget = |b: u64| {
        if b == 0 {
            Err(Error::Config("budget must be positive".into()))
        } else if b > c.max_words {
            Err(Error::Config(format!("budget {b} exceeds the word cap {}", c.max_words)))
        } else {
            Ok(())
        }
    };
    match &cli.command {
        Command::Bounds { depth, .. } | Command::Chain { depth, .. } => {
            if *depth == 0 {
                return Err(Error::Config("depth must be at least 1".into()));
            }
        }
        Command::Refine { width, budget: b, .. } | Command::Inessential { width, budget: b, .. } => {
            positive("width", *width)?;
            budget(*b)?;
        }
        Command::VerifyBw { tol, budget: b, .. } => {
            positive("tol", *tol)?;
            budget(*b)?;
        }
        Command::LiftCheck { depth, budget: b, tol, .. } => {
            if *depth == 0 {
                return Err(Error::Config("depth must be at least 1".into()));
            }
            positive("tol", *tol)?;
            budget(*b)?;
        }
        Command::Radical { .. } => {}
        Command::Continuity {
            eps,
            trials,
            width,
            budget: b,
            ..
        } => {
            if eps.is_empty() || eps.iter().any(|e| !(*e >= 0.0 && e.is_finite())) {
                return Err(Error::Config("eps must be a nonempty list of nonnegative values".into()));
            }
            if *trials == 0 {
                return Err(Error::Config("trials must be at least 1".into()));
            }
            positive("width", *width)?;
            budget(*b)?;
        }
    }
    Ok(())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Executes the command and returns `(pass, report)`.
fn dispatch(cli: &Cli, set: &MatrixSet) -> Result<(bool, Value)> {
    let caps = &cli.common;
    Ok(match &cli.command {
        Command::Bounds { depth, .. } => {
            let needed = word_count(set.len(), *depth);
            if needed > caps.max_words as u128 {
                return Err(Error::BudgetExceeded {
                    needed,
                    budget: caps.max_words,
                });
            }
            let en = Enumerator::with_budget(caps.max_words);
            let (lower, witness, upper) = en.sandwich(set, *depth)?;
            (
                true,
                json!({
                    "lower": lower,
                    "upper": upper,
                    "lower_witness": witness,
                    "depth_used": depth,
                    "nodes_explored": needed as u64,
                }),
            )
        }
        Command::Refine { width, budget, .. } => {
            let r = refine_with(set, &RefineOptions::new(*width, *budget))?;
            (r.converged, to_value(&r))
        }
        Command::VerifyBw { tol, budget, .. } => {
            let r = verify_berger_wang(set, *tol, *budget)?;
            (r.pass, to_value(&r))
        }
        Command::LiftCheck {
            depth, budget, tol, ..
        } => {
            let opts = PassOptions {
                tol: *tol,
                ..PassOptions::new(*budget)
            };
            let r = check_pass_identities_with(set, *depth, &opts)?;
            (r.pass, to_value(&r))
        }
        Command::Radical { .. } => {
            let d = set.dim();
            let alg = generated_subalgebra(set, d * d)?;
            let rad = jacobson_radical(&alg)?;
            let rad_dim = rad.dim();
            let q = quotient(&alg, rad)?;
            let quotient_radical = jacobson_radical(&q.as_algebra()?)?.dim();
            (
                true,
                json!({
                    "algebra_dim": alg.dim(),
                    "unital": alg.is_unital(),
                    "radical_dim": rad_dim,
                    "quotient_dim": q.dim(),
                    "quotient_rep_dim": q.rep_dim(),
                    "quotient_radical_dim": quotient_radical,
                }),
            )
        }
        Command::Inessential { width, budget, .. } => {
            let opts = InessentialOptions {
                width: *width,
                ..InessentialOptions::new(*budget)
            };
            let r = check_inessential_with(set, &opts)?;
            (r.pass, to_value(&r))
        }
        Command::Chain { chain, depth, .. } => {
            let d = set.dim();
            let alg = generated_subalgebra(set, d * d)?;
            let ideals = match chain {
                None => vec![Ideal::zero(&alg), jacobson_radical(&alg)?],
                Some(path) => load_chain(path, set)?
                    .iter()
                    .map(|gens| Ideal::generated_by_matrices(&alg, gens))
                    .collect::<Result<Vec<_>>>()?,
            };
            let r = ideal_chain_monotonicity(set, &alg, &ideals, *depth, caps.max_words)?;
            (r.pass, to_value(&r))
        }
        Command::Continuity {
            eps,
            trials,
            seed,
            width,
            budget,
            ..
        } => {
            let opts = ProbeOptions {
                refine: RefineOptions::new(*width, *budget),
                ..ProbeOptions::new(*trials, *seed)
            };
            let rows = continuity_probe(set, eps, &opts)?;
            let complete = rows.iter().all(|r| r.complete);
            (complete, json!({ "rows": rows, "complete": complete }))
        }
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    check_config(cli)?;
    let started = Instant::now();
    let path = cli.command.input();
    let bytes = read(path)?;
    let set = parse_matrix_set_capped(utf8(&bytes)?, cli.common.max_dim, cli.common.max_generators)?;
    let (pass, report) = dispatch(cli, &set)?;
    let status = if pass { 0 } else { EXIT_NOT_MET };
    let digest = hex::encode(Sha256::digest(&bytes));
    let mut doc = json!({
        "tool": "jsr",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "input_sha256": digest,
        "dim": set.dim(),
        "generators": set.len(),
        "pass": pass,
        "report": report,
    });
    if let Some(name) = set.name() {
        doc["name"] = json!(name);
    }
    if cli.common.timing {
        doc["wall_time_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
    }
    let text = match cli.common.format {
        OutputFormat::Json => serde_json::to_string(&doc).expect("json"),
        OutputFormat::Text => render_table(&doc),
    };
    Ok(Outcome {
        status,
        report: text,
    })
}

/// Runs one invocation on a dedicated worker pool. Errors are returned, not
/// printed; the caller maps them to [`EXIT_ERROR`].
pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.common.workers {
        if w == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    pool.install(|| execute(cli))
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, S>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Config(e.to_string()))?;
    run(&cli)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn render_table(doc: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
