//! The `temporalis` command line.
//!
//! Every subcommand takes either parameter flags or `--config <file.json>`
//! (never both), writes JSON or CSV to stdout or `--out`, and exits with 0 on
//! success, 2 on usage or validation errors and 3 on internal errors.
//! `TEMPORALIS_THREADS` caps the worker pool used by scans and trials.

mod format;
pub mod grammar;
pub mod records;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::criteria::{lgi_chsh4, lgi_wigner3, nsit_compare};
use crate::error::Error;
use crate::feasibility::{check_scenario, ProblemJson, ResultJson};
use crate::models::{
    double_slit_pattern, mz_build_scenario, mz_correlations_analytic, mz_nsit_delta_analytic, mz_nsit_probs_analytic,
    mz_wigner_k, spin_build_scenario, spin_correlation, spin_nsit_probs, DoubleSlitParams, Experiment, Grid,
    MzCorrelations, MzParams, SpinParams,
};
use crate::protocol::{correlation, marginal_with, marginal_without, JointDistribution};
use crate::stats::nsit_trials;
use crate::tol;

pub use format::{csv, g17, Cell};
use grammar::{parse_angle, parse_angle_list, parse_axis, AngleValue, AxisSpec};
use records::*;

/// Largest accepted `mz-scan` grid.
pub const MAX_SCAN_POINTS: u64 = 10_000_000;

/// Noise floor below which density wiggles are not counted as maxima.
pub const MAXIMA_NOISE: f64 = 1e-8;

const MZ_PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

#[derive(Debug, Parser)]
#[command(name = "temporalis", version, about = "Temporal correlations, Leggett-Garg inequalities and no-signaling in time")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One Mach-Zehnder parameter point.
    MzPoint(MzPointArgs),
    /// Mach-Zehnder parameter grid, one row per point.
    MzScan(MzScanArgs),
    /// Precessing macro-spin at a list of times.
    Spin(SpinArgs),
    /// Double slit: both open versus the blocked-slit mixture.
    Doubleslit(DoubleSlitArgs),
    /// Macrorealist feasibility of a set of observed tables.
    Feasibility(FeasibilityArgs),
    /// Seeded finite-sample NSIT experiments at a Mach-Zehnder point.
    NsitSample(NsitSampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

fn angle(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct MzFlags {
    #[arg(long, value_parser = angle, allow_hyphen_values = true, conflicts_with = "config")]
    pub r1: Option<f64>,
    #[arg(long, value_parser = angle, allow_hyphen_values = true, conflicts_with = "config")]
    pub r2: Option<f64>,
    /// Radians; accepts `pi`, `3*pi/4`, `-pi/2`, ...
    #[arg(long, value_parser = angle, allow_hyphen_values = true, conflicts_with = "config")]
    pub phi: Option<f64>,
    #[arg(long, value_parser = angle, allow_hyphen_values = true, conflicts_with = "config")]
    pub q: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MzPointArgs {
    #[command(flatten)]
    pub params: MzFlags,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MzScanArgs {
    /// `v`, `v1,v2,...` or `min:max:n`; default `0:1:11`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "config")]
    pub r1: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "config")]
    pub r2: Option<String>,
    /// Default `0:2pi:11`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "config")]
    pub phi: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "config")]
    pub q: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpinArgs {
    #[arg(long, value_parser = angle, conflicts_with = "config")]
    pub omega: Option<f64>,
    /// Comma-separated, strictly increasing; default `0,pi/4,pi/2,3*pi/4`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "config")]
    pub times: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DoubleSlitArgs {
    #[arg(long, value_parser = angle, conflicts_with = "config")]
    pub sigma: Option<f64>,
    /// Slit separation.
    #[arg(long, value_parser = angle, conflicts_with = "config")]
    pub d: Option<f64>,
    #[arg(long, value_parser = angle, conflicts_with = "config")]
    pub mass: Option<f64>,
    #[arg(long, value_parser = angle, conflicts_with = "config")]
    pub t_prop: Option<f64>,
    #[arg(long, value_parser = angle, allow_hyphen_values = true, conflicts_with = "config")]
    pub x_min: Option<f64>,
    #[arg(long, value_parser = angle, allow_hyphen_values = true, conflicts_with = "config")]
    pub x_max: Option<f64>,
    #[arg(long, conflicts_with = "config")]
    pub n_points: Option<usize>,
    /// Weight of experiment II in the mixture.
    #[arg(long, value_parser = angle, conflicts_with = "config")]
    pub weight: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FeasibilityArgs {
    /// Problem file: `{"outcomes": [...], "constraints": [{"times": [...], "table": {...}}]}`.
    #[arg(long, alias = "problem", required = true)]
    pub config: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NsitSampleArgs {
    #[command(flatten)]
    pub params: MzFlags,
    /// Draws per arm.
    #[arg(long, conflicts_with = "config")]
    pub n: Option<u64>,
    #[arg(long, conflicts_with = "config")]
    pub trials: Option<usize>,
    /// Trial `k` uses seed `seed + k`.
    #[arg(long, conflicts_with = "config")]
    pub seed: Option<u64>,
    #[arg(long, conflicts_with = "config")]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    MachZehnder,
    Spin,
    DoubleSlit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MzPointConfig {
    #[serde(default)]
    pub model: Option<ModelName>,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    pub phi: AngleValue,
    pub q: f64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MzScanConfig {
    #[serde(default)]
    pub model: Option<ModelName>,
    #[serde(rename = "R1", default)]
    pub r1: Option<AxisSpec>,
    #[serde(rename = "R2", default)]
    pub r2: Option<AxisSpec>,
    #[serde(default)]
    pub phi: Option<AxisSpec>,
    #[serde(default)]
    pub q: Option<AxisSpec>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinConfig {
    #[serde(default)]
    pub model: Option<ModelName>,
    pub omega: f64,
    pub times: Vec<AngleValue>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleSlitConfig {
    #[serde(default)]
    pub model: Option<ModelName>,
    #[serde(default)]
    pub sigma: Option<f64>,
    #[serde(default)]
    pub d: Option<f64>,
    #[serde(default)]
    pub mass: Option<f64>,
    #[serde(default)]
    pub t_prop: Option<f64>,
    #[serde(default)]
    pub grid: Option<Grid>,
    #[serde(default)]
    pub weight: Option<f64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NsitSampleConfig {
    #[serde(default)]
    pub model: Option<ModelName>,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    pub phi: AngleValue,
    pub q: f64,
    pub n: u64,
    pub trials: usize,
    pub seed: u64,
    pub alpha: f64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(e) if e.is_internal() => 3,
            _ => 2,
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Rendered output and where it goes.
struct Emit {
    text: String,
    out: Option<PathBuf>,
}

/// Runs the command line with process stdout and stderr; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let (code, sink): (i32, &mut dyn Write) = if e.use_stderr() { (2, stderr) } else { (0, stdout) };
            let _ = sink.write_all(e.render().to_string().as_bytes());
            return code;
        }
    };
    let result = with_thread_limit(|| execute(&cli.command));
    let written = result.and_then(|emit| match &emit.out {
        Some(path) => std::fs::write(path, &emit.text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(emit.text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    });
    match written {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.exit_code()
        }
    }
}

fn with_thread_limit(job: impl FnOnce() -> Outcome<Emit> + Send) -> Outcome<Emit> {
    let Ok(raw) = std::env::var("TEMPORALIS_THREADS") else {
        return job();
    };
    let threads: usize = match raw.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => return Err(Failure::Usage(format!("TEMPORALIS_THREADS = '{raw}' is not a positive integer"))),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Lib(Error::Numerical(format!("thread pool: {e}"))))?;
    pool.install(job)
}

fn read_config<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))
}

fn check_model(found: Option<ModelName>, expected: ModelName) -> Outcome<()> {
    match found {
        Some(m) if m != expected => Err(Failure::Usage(format!("config model {m:?} does not match this command"))),
        _ => Ok(()),
    }
}

fn json<T: Serialize>(record: &T) -> Outcome<String> {
    let mut s = serde_json::to_string_pretty(record)
        .map_err(|e| Failure::Lib(Error::InternalConsistency(format!("serialization: {e}"))))?;
    s.push('\n');
    Ok(s)
}

/// Flag values override the config file's `out` and `format`.
fn emit(output: &OutputArgs, cfg_out: Option<PathBuf>, cfg_format: Option<Format>, default: Format) -> (Format, Option<PathBuf>) {
    (output.format.or(cfg_format).unwrap_or(default), output.out.clone().or(cfg_out))
}

fn execute(cmd: &Command) -> Outcome<Emit> {
    match cmd {
        Command::MzPoint(a) => cmd_mz_point(a),
        Command::MzScan(a) => cmd_mz_scan(a),
        Command::Spin(a) => cmd_spin(a),
        Command::Doubleslit(a) => cmd_doubleslit(a),
        Command::Feasibility(a) => cmd_feasibility(a),
        Command::NsitSample(a) => cmd_nsit_sample(a),
    }
}

fn mz_from_flags(f: &MzFlags, defaults: Option<MzParams>) -> Outcome<MzParams> {
    let pick = |v: Option<f64>, d: Option<f64>, name: &str| {
        v.or(d).ok_or_else(|| Failure::Usage(format!("missing --{name} (or use --config)")))
    };
    let d = defaults.map(|p| (p.r1, p.r2, p.phi, p.q));
    Ok(MzParams::new(
        pick(f.r1, d.map(|d| d.0), "r1")?,
        pick(f.r2, d.map(|d| d.1), "r2")?,
        pick(f.phi, d.map(|d| d.2), "phi")?,
        pick(f.q, d.map(|d| d.3), "q")?,
    )?)
}

/// Everything reported for one Mach-Zehnder point.
pub fn mz_point_record(p: &MzParams) -> crate::Result<MzPointRecord> {
    let s = mz_build_scenario(p)?;
    let analytic = mz_correlations_analytic(p);
    let simulated = MzCorrelations {
        c01: correlation(&s, 0, 1)?,
        c02: correlation(&s, 0, 2)?,
        c12: correlation(&s, 1, 2)?,
    };
    let (without, with) = mz_nsit_probs_analytic(p)?;
    let analytic_nsit = nsit_compare(&without, &with, tol::VIOLATION)?;
    Ok(MzPointRecord {
        params: (*p).into(),
        analytic,
        simulated,
        wigner_k: mz_wigner_k(p),
        lgi: lgi_wigner3(simulated.c01, simulated.c12, simulated.c02)?.at_checkpoints(vec![0, 1, 2]),
        nsit_delta_analytic: mz_nsit_delta_analytic(p),
        nsit_kappa_analytic: analytic_nsit.kappa,
        nsit: nsit_compare(&marginal_without(&s, 2)?, &marginal_with(&s, 1, 2)?, tol::VIOLATION)?,
        feasibility_joints: ResultJson::from_result(&check_scenario(&s, &MZ_PAIRS, false)?),
        feasibility_with_marginals: ResultJson::from_result(&check_scenario(&s, &MZ_PAIRS, true)?),
    })
}

/// One scan row: closed forms for the criteria, LP on the simulated joints.
pub fn mz_scan_row(p: &MzParams) -> crate::Result<ScanRow> {
    let c = mz_correlations_analytic(p);
    let k = mz_wigner_k(p);
    let delta = mz_nsit_delta_analytic(p);
    let s = mz_build_scenario(p)?;
    Ok(ScanRow {
        r1: p.r1,
        r2: p.r2,
        phi: p.phi,
        q: p.q,
        c01: c.c01,
        c02: c.c02,
        c12: c.c12,
        k,
        lgi_violated: k - 1.0 > tol::VIOLATION,
        delta,
        nsit_violated: delta.abs() > tol::VIOLATION,
        feasible: check_scenario(&s, &MZ_PAIRS, false)?.feasible,
    })
}

fn scan_cells(r: &ScanRow) -> Vec<Cell> {
    vec![
        Cell::Num(r.r1),
        Cell::Num(r.r2),
        Cell::Num(r.phi),
        Cell::Num(r.q),
        Cell::Num(r.c01),
        Cell::Num(r.c02),
        Cell::Num(r.c12),
        Cell::Num(r.k),
        Cell::Bool(r.lgi_violated),
        Cell::Num(r.delta),
        Cell::Bool(r.nsit_violated),
        Cell::Bool(r.feasible),
    ]
}

fn cmd_mz_point(a: &MzPointArgs) -> Outcome<Emit> {
    let (p, cfg_out, cfg_format) = match &a.config {
        Some(path) => {
            let c: MzPointConfig = read_config(path)?;
            check_model(c.model, ModelName::MachZehnder)?;
            (MzParams::new(c.r1, c.r2, c.phi.value(), c.q)?, c.out, c.format)
        }
        None => (mz_from_flags(&a.params, None)?, None, None),
    };
    let (format, out) = emit(&a.output, cfg_out, cfg_format, Format::Json);
    let text = match format {
        Format::Json => json(&mz_point_record(&p)?)?,
        Format::Csv => csv(&SCAN_HEADER, [scan_cells(&mz_scan_row(&p)?)]),
    };
    Ok(Emit { text, out })
}

/// Cartesian grid in lexicographic order, `R1` slowest and `q` fastest.
pub fn scan_grid(r1: &[f64], r2: &[f64], phi: &[f64], q: &[f64]) -> crate::Result<Vec<MzParams>> {
    let total = [r1.len(), r2.len(), phi.len(), q.len()]
        .iter()
        .try_fold(1u64, |acc, &n| acc.checked_mul(n as u64))
        .unwrap_or(u64::MAX);
    if total > MAX_SCAN_POINTS {
        return Err(Error::InvalidParams(format!("grid has {total} points, limit is {MAX_SCAN_POINTS}")));
    }
    if total == 0 {
        return Err(Error::InvalidParams("every axis needs at least one value".into()));
    }
    let mut points = Vec::with_capacity(total as usize);
    for &a in r1 {
        for &b in r2 {
            for &f in phi {
                for &c in q {
                    points.push(MzParams::new(a, b, f, c)?);
                }
            }
        }
    }
    Ok(points)
}

pub fn mz_scan_rows(points: &[MzParams]) -> crate::Result<Vec<ScanRow>> {
    points.par_iter().map(mz_scan_row).collect()
}

fn cmd_mz_scan(a: &MzScanArgs) -> Outcome<Emit> {
    let unit = "0:1:11";
    let turn = "0:2pi:11";
    let axis = |flag: &Option<String>, default: &str| parse_axis(flag.as_deref().unwrap_or(default));
    let (axes, cfg_out, cfg_format) = match &a.config {
        Some(path) => {
            let c: MzScanConfig = read_config(path)?;
            check_model(c.model, ModelName::MachZehnder)?;
            let get = |spec: &Option<AxisSpec>, default: &str| match spec {
                Some(s) => s.values(),
                None => parse_axis(default),
            };
            (
                [get(&c.r1, unit)?, get(&c.r2, unit)?, get(&c.phi, turn)?, get(&c.q, unit)?],
                c.out,
                c.format,
            )
        }
        None => (
            [axis(&a.r1, unit)?, axis(&a.r2, unit)?, axis(&a.phi, turn)?, axis(&a.q, unit)?],
            None,
            None,
        ),
    };
    let points = scan_grid(&axes[0], &axes[1], &axes[2], &axes[3])?;
    let rows = mz_scan_rows(&points)?;
    let (format, out) = emit(&a.output, cfg_out, cfg_format, Format::Csv);
    let text = match format {
        Format::Csv => csv(&SCAN_HEADER, rows.iter().map(scan_cells)),
        Format::Json => json(&MzScanRecord { rows })?,
    };
    Ok(Emit { text, out })
}

/// Spin report: analytic correlations and NSIT, LP on the qubit realization.
pub fn spin_record(p: &SpinParams) -> crate::Result<SpinRecord> {
    let s = spin_build_scenario(p)?;
    let n = p.times.len();
    let all_pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let pairs = all_pairs
        .iter()
        .map(|&(i, j)| {
            let (without, with) = spin_nsit_probs(p, i, j)?;
            Ok(SpinPairRecord {
                i,
                j,
                correlation: spin_correlation(p, i, j)?,
                nsit: nsit_compare(&without, &with, tol::VIOLATION)?,
                feasible: check_scenario(&s, &[(i, j)], true)?.feasible,
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let c = |i, j| spin_correlation(p, i, j);
    let chsh4 = if n >= 4 {
        Some(lgi_chsh4(c(0, 1)?, c(1, 2)?, c(2, 3)?, c(0, 3)?)?.at_checkpoints(vec![0, 1, 2, 3]))
    } else {
        None
    };
    let wigner3 = if n >= 3 {
        Some(lgi_wigner3(c(0, 1)?, c(1, 2)?, c(0, 2)?)?.at_checkpoints(vec![0, 1, 2]))
    } else {
        None
    };
    let full = if all_pairs.is_empty() {
        let marginal = JointDistribution::from_marginal(0, &marginal_without(&s, 0)?);
        crate::feasibility::solve(&crate::feasibility::FeasibilityProblem::new(vec![vec![1.0, -1.0]], vec![marginal])?)?
    } else {
        check_scenario(&s, &all_pairs, true)?
    };
    Ok(SpinRecord {
        omega: p.omega,
        times: p.times.clone(),
        pairs,
        chsh4,
        wigner3,
        feasibility_all_pairs: ResultJson::from_result(&full),
    })
}

fn cmd_spin(a: &SpinArgs) -> Outcome<Emit> {
    let (p, cfg_out, cfg_format) = match &a.config {
        Some(path) => {
            let c: SpinConfig = read_config(path)?;
            check_model(c.model, ModelName::Spin)?;
            (SpinParams::new(c.omega, c.times.iter().map(|t| t.value()).collect())?, c.out, c.format)
        }
        None => {
            let times = parse_angle_list(a.times.as_deref().unwrap_or("0,pi/4,pi/2,3*pi/4"))?;
            (SpinParams::new(a.omega.unwrap_or(1.0), times)?, None, None)
        }
    };
    let record = spin_record(&p)?;
    let (format, out) = emit(&a.output, cfg_out, cfg_format, Format::Json);
    let text = match format {
        Format::Json => json(&record)?,
        Format::Csv => csv(
            &["i", "j", "t_i", "t_j", "correlation", "max_abs_delta", "kappa", "nsit_violated", "feasible"],
            record.pairs.iter().map(|r| {
                vec![
                    Cell::Int(r.i as u64),
                    Cell::Int(r.j as u64),
                    Cell::Num(p.times[r.i]),
                    Cell::Num(p.times[r.j]),
                    Cell::Num(r.correlation),
                    Cell::Num(r.nsit.max_abs_delta),
                    Cell::Num(r.nsit.kappa),
                    Cell::Bool(r.nsit.violated),
                    Cell::Bool(r.feasible),
                ]
            }),
        ),
    };
    Ok(Emit { text, out })
}

const EXPERIMENTS: [Experiment; 4] = [
    Experiment::BothOpen,
    Experiment::LeftBlocked,
    Experiment::RightBlocked,
    Experiment::Mixture,
];

/// Double-slit summary plus the four screen patterns.
pub fn double_slit_record(p: &DoubleSlitParams) -> crate::Result<(DoubleSlitRecord, Vec<crate::models::SlitPattern>)> {
    let patterns = EXPERIMENTS
        .iter()
        .map(|&e| double_slit_pattern(p, e))
        .collect::<crate::Result<Vec<_>>>()?;
    let nsit = nsit_compare(&patterns[0].to_distribution()?, &patterns[3].to_distribution()?, tol::VIOLATION)?;
    let experiments = patterns
        .iter()
        .map(|pat| ExperimentSummary {
            experiment: pat.experiment,
            local_maxima: pat.local_maxima(MAXIMA_NOISE),
            raw_integral: pat.raw_integral,
            bin_mass_sum: pat.bin_masses.iter().sum(),
        })
        .collect();
    let record = DoubleSlitRecord {
        params: *p,
        kappa: nsit.kappa,
        max_abs_delta: nsit.max_abs_delta,
        nsit_violated: nsit.violated,
        experiments,
    };
    Ok((record, patterns))
}

fn cmd_doubleslit(a: &DoubleSlitArgs) -> Outcome<Emit> {
    let base = DoubleSlitParams::default();
    let (p, cfg_out, cfg_format) = match &a.config {
        Some(path) => {
            let c: DoubleSlitConfig = read_config(path)?;
            check_model(c.model, ModelName::DoubleSlit)?;
            let p = DoubleSlitParams {
                sigma: c.sigma.unwrap_or(base.sigma),
                d: c.d.unwrap_or(base.d),
                mass: c.mass.unwrap_or(base.mass),
                t_prop: c.t_prop.unwrap_or(base.t_prop),
                grid: c.grid.unwrap_or(base.grid),
                weight: c.weight.unwrap_or(base.weight),
            };
            (p, c.out, c.format)
        }
        None => {
            let p = DoubleSlitParams {
                sigma: a.sigma.unwrap_or(base.sigma),
                d: a.d.unwrap_or(base.d),
                mass: a.mass.unwrap_or(base.mass),
                t_prop: a.t_prop.unwrap_or(base.t_prop),
                grid: Grid {
                    x_min: a.x_min.unwrap_or(base.grid.x_min),
                    x_max: a.x_max.unwrap_or(base.grid.x_max),
                    n_points: a.n_points.unwrap_or(base.grid.n_points),
                },
                weight: a.weight.unwrap_or(base.weight),
            };
            (p, None, None)
        }
    };
    let (record, patterns) = double_slit_record(&p)?;
    let (format, out) = emit(&a.output, cfg_out, cfg_format, Format::Json);
    let text = match format {
        Format::Json => json(&record)?,
        Format::Csv => csv(
            &["x", "I", "II", "III", "II_AND_III"],
            (0..patterns[0].x.len()).map(|k| {
                let mut row = vec![Cell::Num(patterns[0].x[k])];
                row.extend(patterns.iter().map(|pat| Cell::Num(pat.density[k])));
                row
            }),
        ),
    };
    Ok(Emit { text, out })
}

fn cmd_feasibility(a: &FeasibilityArgs) -> Outcome<Emit> {
    let problem: ProblemJson = read_config(&a.config)?;
    let result = ResultJson::from_result(&crate::feasibility::solve(&problem.to_problem()?)?);
    let (format, out) = emit(&a.output, None, None, Format::Json);
    let text = match format {
        Format::Json => json(&result)?,
        Format::Csv => {
            let certificate = result
                .certificate
                .as_ref()
                .map(|c| c.constraints.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(";"))
                .unwrap_or_default();
            let witness = result
                .witness
                .as_ref()
                .map(|w| {
                    w.weights
                        .iter()
                        .map(|(h, v)| format!("{h}={}", g17(*v)))
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default();
            csv(
                &["feasible", "residual", "certificate_constraints", "witness"],
                [vec![
                    Cell::Bool(result.feasible),
                    Cell::Num(result.residual),
                    Cell::Text(certificate),
                    Cell::Text(witness),
                ]],
            )
        }
    };
    Ok(Emit { text, out })
}

/// Seeded trials comparing `t2` statistics without and with the `t1` measurement.
pub fn nsit_sample_record(p: &MzParams, n: u64, trials: usize, seed: u64, alpha: f64) -> crate::Result<NsitSampleRecord> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidParams("n and trials must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParams(format!("alpha = {alpha} outside (0, 1)")));
    }
    let s = mz_build_scenario(p)?;
    let (without, with) = (marginal_without(&s, 2)?, marginal_with(&s, 1, 2)?);
    let outcomes = nsit_trials(&without, &with, n, trials, seed)?;
    let trials: Vec<TrialRecord> = outcomes
        .iter()
        .enumerate()
        .map(|(k, t)| TrialRecord {
            trial: k,
            seed: t.seed,
            statistic: t.statistic,
            dof: t.dof,
            p_value: t.p_value,
            kappa_hat: t.kappa_hat,
            significant: t.p_value < alpha,
        })
        .collect();
    Ok(NsitSampleRecord {
        params: (*p).into(),
        n,
        seed,
        alpha,
        p_without: without,
        p_with: with,
        significant: trials.iter().filter(|t| t.significant).count(),
        trials,
    })
}

fn cmd_nsit_sample(a: &NsitSampleArgs) -> Outcome<Emit> {
    let max_violation = MzParams::new(0.5, 0.5, 0.0, 1.0)?;
    let (p, n, trials, seed, alpha, cfg_out, cfg_format) = match &a.config {
        Some(path) => {
            let c: NsitSampleConfig = read_config(path)?;
            check_model(c.model, ModelName::MachZehnder)?;
            let p = MzParams::new(c.r1, c.r2, c.phi.value(), c.q)?;
            (p, c.n, c.trials, c.seed, c.alpha, c.out, c.format)
        }
        None => (
            mz_from_flags(&a.params, Some(max_violation))?,
            a.n.unwrap_or(10_000),
            a.trials.unwrap_or(100),
            a.seed.unwrap_or(0),
            a.alpha.unwrap_or(0.05),
            None,
            None,
        ),
    };
    let record = nsit_sample_record(&p, n, trials, seed, alpha)?;
    let (format, out) = emit(&a.output, cfg_out, cfg_format, Format::Json);
    let text = match format {
        Format::Json => json(&record)?,
        Format::Csv => csv(
            &["trial", "seed", "statistic", "dof", "p_value", "kappa_hat", "significant"],
            record.trials.iter().map(|t| {
                vec![
                    Cell::Int(t.trial as u64),
                    Cell::Int(t.seed),
                    Cell::Num(t.statistic),
                    Cell::Int(t.dof as u64),
                    Cell::Num(t.p_value),
                    Cell::Num(t.kappa_hat),
                    Cell::Bool(t.significant),
                ]
            }),
        ),
    };
    Ok(Emit { text, out })
}
