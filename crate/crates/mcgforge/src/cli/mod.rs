//! Command-line front end. [`run`] takes argv and returns the exit code
//! with both output streams, so the binary and the tests share one path.
//!
//! Exit codes: 0 success, 1 a certificate is absent under
//! `--require-certificate` (or `--replay` fails), 2 usage or input error.

mod commands;
mod config;
mod report;

use std::path::PathBuf;

use clap::{Arg, ArgAction, Args, Command, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

pub use config::{Config, PRECISION_ENV};
pub use report::{report_schema_version, Report, SCHEMA_VERSION};

#[derive(Parser, Debug, Serialize)]
#[command(name = "mcgforge", about = "Open-book cosets, Stallings curves, fibered link families and their certificates")]
pub struct Cli {
    /// Config file (TOML or JSON) overriding the defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Re-verify every emitted certificate before exiting.
    #[arg(long, global = true)]
    pub replay: bool,
    /// Exit with status 1 when an expected certificate is absent.
    #[arg(long, global = true)]
    pub require_certificate: bool,
    /// Omit environment data from the header.
    #[arg(long, global = true)]
    pub canonical: bool,
    #[command(subcommand)]
    pub command: Verb,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Verb {
    /// Surface data.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Curve graph distance between two curves.
    Distance(DistanceArgs),
    /// Abelian or free cosets from Hopf stabilizations.
    #[command(subcommand)]
    Coset(CosetCmd),
    /// The link family.
    #[command(subcommand)]
    Link(LinkCmd),
    /// Emit one certificate.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Validate and summarize external data.
    #[command(subcommand)]
    Ingest(IngestCmd),
}

#[derive(Subcommand, Debug, Serialize)]
pub enum SurfaceCmd {
    Info(SigArgs),
}

#[derive(Args, Debug, Serialize, Clone, Copy)]
pub struct SigArgs {
    #[arg(long, default_value_t = 1)]
    pub genus: u32,
    #[arg(long, default_value_t = 1)]
    pub boundary: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct DistanceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub sig: SigArgs,
    /// `p/q` slope on the torus or `C w0,w1,...` normal coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long)]
    pub weight_bound: Option<u64>,
    #[arg(long)]
    pub cap: Option<u32>,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum CosetCmd {
    Abelian(AbelianArgs),
    Free(FreeArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct VolumeArgs {
    /// Upper bound on the Gromov norm term of the coset volume bound.
    #[arg(long)]
    pub norm_upper: Option<f64>,
    /// The universal constant; falls back to the config value.
    #[arg(long)]
    pub volume_constant: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct AbelianArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub k: u32,
    /// Comma-separated nonzero exponents, one per Stallings curve.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub exps: Vec<i64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub volume: VolumeArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct FreeArgs {
    #[arg(long, default_value_t = 4)]
    pub g: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub volume: VolumeArgs,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum LinkCmd {
    Family(FamilyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct FamilyArgs {
    #[arg(long, required_unless_present = "grid")]
    pub l: Option<i64>,
    #[arg(long, required_unless_present = "grid")]
    pub m: Option<i64>,
    #[arg(long, required_unless_present = "grid")]
    pub k: Option<i64>,
    /// Every `(l, m, k)` in `[1, N]^3`.
    #[arg(long, conflicts_with_all = ["l", "m", "k"])]
    pub grid: Option<i64>,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum CertifyCmd {
    Penner(WordArgs),
    Growth(GrowthArgs),
    Independence(IndependenceArgs),
    Filling(FillingArgs),
    Qhyp(QhypArgs),
}

#[derive(Args, Debug, Serialize, Clone)]
pub struct WordArgs {
    /// Use the chain Penner word on `Σ_{g,1}` instead of a torus word.
    #[arg(long, conflicts_with_all = ["word", "curve"])]
    pub chain_genus: Option<u32>,
    /// Twist word `[id^exp, ...]`, rightmost letter first.
    #[arg(long, default_value = "[a^1, b^-1]")]
    pub word: String,
    /// Curve table entry `id=p/q` on the torus, repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Vec<String>,
    /// Ids of the positive side of the Penner system.
    #[arg(long, value_delimiter = ',', default_value = "a")]
    pub positive: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "b")]
    pub negative: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct GrowthArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub word: WordArgs,
    /// Seed curve id.
    #[arg(long, default_value = "b")]
    pub seed: String,
    #[arg(long)]
    pub iterations: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct IndependenceArgs {
    #[arg(long, required_unless_present = "records")]
    pub a: Option<f64>,
    #[arg(long, required_unless_present = "records")]
    pub b: Option<f64>,
    /// Volume records file; pick the pair with `--ids`.
    #[arg(long, requires = "ids", conflicts_with_all = ["a", "b"])]
    pub records: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub ids: Vec<String>,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct FillingArgs {
    #[arg(long, required_unless_present = "records")]
    pub vol: Option<f64>,
    #[arg(long, required_unless_present = "records")]
    pub lambda: Option<f64>,
    /// Volume records file; uses the shortest slope of `--id`.
    #[arg(long, requires = "id", conflicts_with_all = ["vol", "lambda"])]
    pub records: Option<PathBuf>,
    #[arg(long)]
    pub id: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct QhypArgs {
    /// Manifold description, for instance `link_complement(4_1(-5),L)`.
    #[arg(long, allow_hyphen_values = true)]
    pub goal: String,
    /// Fact store file, read if present and written back.
    #[arg(long)]
    pub facts: Option<PathBuf>,
    /// Shadow-link base facts.
    #[arg(long)]
    pub shadow: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum IngestCmd {
    Volumes(IngestArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct IngestArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn long_only(cmd: Command) -> Command {
    cmd.disable_help_flag(true)
        .disable_version_flag(true)
        .disable_help_subcommand(true)
        .arg(Arg::new("help").long("help").action(ArgAction::Help).help("Print help"))
        .mut_subcommands(long_only)
}

pub fn command() -> Command {
    long_only(Cli::command())
}

/// Parse and execute. `env_precision` is the value of `MCGFORGE_PRECISION`.
pub fn run<I, T>(argv: I, env_precision: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: e.render().to_string() },
    };
    execute(&cli, env_precision)
}

fn execute(cli: &Cli, env_precision: Option<&str>) -> Outcome {
    let fail = |e: crate::Error| Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") };
    let cfg = match Config::resolve(cli.config.as_deref(), env_precision) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let (report, replay_failures) = match commands::dispatch(&cli.command, &cfg, cli.replay) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let mut code = 0;
    let mut stderr = String::new();
    for f in &replay_failures {
        stderr.push_str(&format!("replay failed: {f}\n"));
        code = 1;
    }
    if cli.require_certificate && (!report.missing.is_empty() || report.certificates == 0) {
        stderr.push_str(&format!("required certificate absent: {}\n", report.missing.join(", ")));
        code = 1;
    }
    let args = command_args(&cli.command);
    let environment = if cli.canonical {
        None
    } else {
        Some(json!({
            PRECISION_ENV: env_precision,
            "config_file": cli.config.as_ref().map(|p| p.display().to_string()),
        }))
    };
    Outcome { code, stdout: report.render(&args, &cfg, environment), stderr }
}

fn command_args(v: &Verb) -> serde_json::Value {
    let mut a = serde_json::to_value(v).expect("args serialize");
    // tagged enum nesting to a flat object: {"Coset":{"Abelian":{...}}} -> {...}
    while let Some(obj) = a.as_object() {
        if obj.len() == 1 {
            let (k, inner) = obj.iter().next().expect("one entry");
            if k.chars().next().is_some_and(|c| c.is_uppercase()) && inner.is_object() {
                a = inner.clone();
                continue;
            }
        }
        break;
    }
    a
}
