//! Command-line front end. [`run`] does all the work and returns what would be
//! printed, so the binary stays a two-liner and commands are testable in-process.
//!
//! Exit codes: 0 ok, 2 no feasible k, 64 usage, 70 internal failure.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classic::{self, ClassicParams, Method};
use crate::curve::{trace_curve, Mode, DEFAULT_POINTS};
use crate::error::FxrError;
use crate::hamming::{identify_secret, HammingInstance};
use crate::phase_ops::SearchSpec;
use crate::simulator::{Schedule, CERTIFY_THRESHOLD};
use crate::solver::{k_lower, phi0, solve_free_pair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "fxr", version, about = "Exact Grover search with fixed-axis-rotation phase pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the free phase pair for one (mode, fixed angle, lambda, k).
    Solve(SolveArgs),
    /// Export the constraint curve f or the half-angle curve g as CSV.
    Curve(CurveArgs),
    /// Solve and certify a whole grid of instances; CSV summary.
    Sweep(SweepArgs),
    /// Recover a secret string through the Hamming-distance parity oracle.
    Hamming(HammingArgs),
    /// Parameters and certification for the three classic exact schemes.
    Classic(ClassicArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Alpha,
    Beta,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Alpha => Mode::Alpha,
            ModeArg::Beta => Mode::Beta,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Fixed phase, in radians or as `<x>pi` (e.g. 0.6pi).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub fixed: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub k: u32,
    /// JSON output (the default; accepted for explicitness).
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub pretty: bool,
    /// Include wall-clock time (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Which {
    F,
    G,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, value_enum, default_value = "alpha")]
    pub mode: ModeArg,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub fixed: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub points: usize,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SweepMode {
    Alpha,
    Beta,
    Both,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub mode: SweepMode,
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.05, 0.1, 0.2, 0.333, 0.5, 0.75])]
    pub lambda: Vec<f64>,
    /// Fixed phases; default 0.1pi, 0.3pi, …, 1.9pi.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true)]
    pub fixed: Vec<f64>,
    /// Offsets added to ceil(k_lower).
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 5])]
    pub k_offsets: Vec<u32>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HammingArgs {
    /// Alphabet size.
    #[arg(long)]
    pub k: usize,
    /// String length (implied by --secret).
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated letters, e.g. 3,1.
    #[arg(long, conflicts_with = "random_secret")]
    pub secret: Option<String>,
    /// Draw the secret from this seed.
    #[arg(long)]
    pub random_secret: Option<u64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct ClassicArgs {
    /// bss, conj or 3d.
    #[arg(long)]
    pub method: Method,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub pretty: bool,
}

/// Accepts plain radians or `<x>pi`, `<x>*pi`, `pi`, `-pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || format!("bad angle '{s}': expected radians or <x>pi");
    match t.strip_suffix("pi") {
        Some(m) => {
            let m = m.trim_end_matches('*').trim();
            let x = match m {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => m.parse::<f64>().map_err(|_| bad())?,
            };
            Ok(x * PI)
        }
        None => t.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub mode: Mode,
    pub fixed_angle: f64,
    pub lambda: f64,
    pub k: u32,
    pub k_lower: f64,
    pub free_pair: [f64; 2],
    pub rotation_angle_phi: f64,
    pub residual_real: f64,
    pub residual_imag: f64,
    pub success_probability: f64,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HammingReport {
    pub k: usize,
    pub n: usize,
    pub secret: String,
    pub recovered: String,
    pub exact: bool,
    pub oracle_queries: usize,
    pub general_alpha_oracle_calls: usize,
    pub k_iter: u32,
    pub success_mass: f64,
    pub beta1: f64,
    pub beta2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicReport {
    pub method: Method,
    pub lambda: f64,
    pub k_opt: f64,
    pub k_used: u32,
    pub params: ClassicParams,
    pub oracle_calls: usize,
    pub schedule: Schedule,
    pub success_probability: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Output { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

pub fn exit_code(e: &FxrError) -> i32 {
    match e {
        FxrError::IterationCountTooSmall { .. } | FxrError::DegenerateAngle { .. } | FxrError::Infeasible(_) => {
            EXIT_INFEASIBLE
        }
        FxrError::InvalidArgument(_) | FxrError::NotImplemented(_) | FxrError::ResourceLimit { .. } => EXIT_USAGE,
        FxrError::SolverFailure(_) => EXIT_INTERNAL,
    }
}

fn error_output(e: FxrError) -> Output {
    let mut msg = e.to_string();
    if let FxrError::IterationCountTooSmall { k_lower, .. } = e {
        let _ = write!(msg, " (k_lower={k_lower:.6})");
    }
    Output::fail(exit_code(&e), msg)
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output::ok(text),
                _ => Output { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Curve(a) => cmd_curve(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Hamming(a) => cmd_hamming(&a),
        Command::Classic(a) => cmd_classic(&a),
    };
    result.unwrap_or_else(error_output)
}

fn to_json<T: Serialize>(v: &T, pretty: bool) -> String {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    s.expect("report types serialize") + "\n"
}

fn emit(text: String, output: &Option<PathBuf>) -> Result<Output, FxrError> {
    match output {
        Some(p) => {
            std::fs::write(p, text)
                .map_err(|e| FxrError::InvalidArgument(format!("cannot write {}: {e}", p.display())))?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(text)),
    }
}

pub fn solve_report(mode: Mode, fixed: f64, lambda: f64, k: u32) -> Result<SolveReport, FxrError> {
    let spec = SearchSpec::new(lambda)?;
    let kl = k_lower(fixed, &spec)?;
    let sol = solve_free_pair(mode, fixed, &spec, k)?;
    Ok(SolveReport {
        mode,
        fixed_angle: fixed,
        lambda,
        k,
        k_lower: kl,
        free_pair: [sol.free_pair.0, sol.free_pair.1],
        rotation_angle_phi: sol.rotation_angle_phi,
        residual_real: sol.residual_real,
        residual_imag: sol.residual_imag,
        success_probability: sol.certified_success_prob,
        certified: sol.certified_success_prob > CERTIFY_THRESHOLD,
        wall_time_ms: None,
    })
}

fn cmd_solve(a: &SolveArgs) -> Result<Output, FxrError> {
    let t0 = Instant::now();
    let mut rep = solve_report(a.mode.into(), a.fixed, a.lambda, a.k)?;
    if a.timing {
        rep.wall_time_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
    }
    Ok(Output::ok(to_json(&rep, a.pretty)))
}

fn cmd_curve(a: &CurveArgs) -> Result<Output, FxrError> {
    let spec = SearchSpec::new(a.lambda)?;
    let mode: Mode = a.mode.into();
    let curve = trace_curve(mode, a.fixed, &spec, a.points)?;
    let mut out = String::new();
    let _ = writeln!(out, "# mode={mode} fixed={:.17e} lambda={:.17e}", a.fixed, a.lambda);
    match a.which {
        Which::F => {
            let _ =
                writeln!(out, "# branch_offset={} (add 2pi*offset to y for the anchored branch)", curve.branch_offset);
            out.push_str("x,y\n");
            for &(x, y) in &curve.samples {
                let _ = writeln!(out, "{x:.16e},{y:.16e}");
            }
        }
        Which::G => {
            let p0 = phi0(a.fixed, &spec);
            let _ = writeln!(out, "# phi0={p0:.16e} pi_minus_phi0={:.16e}", PI - p0);
            out.push_str("x,y\n");
            for &(x, _) in &curve.samples {
                let _ = writeln!(out, "{x:.16e},{:.16e}", curve.g(x));
            }
        }
    }
    emit(out, &a.output)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub mode: Mode,
    pub lambda: f64,
    pub fixed: f64,
    pub k: Option<u32>,
    pub free1: Option<f64>,
    pub free2: Option<f64>,
    pub residual_real: Option<f64>,
    pub residual_imag: Option<f64>,
    pub success: Option<f64>,
    pub status: String,
}

/// Every cell of the grid, in grid order.
pub fn sweep_rows(modes: &[Mode], lambdas: &[f64], fixed: &[f64], offsets: &[u32]) -> Vec<SweepRow> {
    let mut cells = Vec::new();
    for &m in modes {
        for &l in lambdas {
            for &f in fixed {
                cells.push((m, l, f));
            }
        }
    }
    cells
        .par_iter()
        .flat_map_iter(|&(mode, lambda, fixed)| {
            let blank = |status: String| SweepRow {
                mode,
                lambda,
                fixed,
                k: None,
                free1: None,
                free2: None,
                residual_real: None,
                residual_imag: None,
                success: None,
                status,
            };
            let spec = match SearchSpec::new(lambda) {
                Ok(s) => s,
                Err(e) => return vec![blank(format!("failed: {e}"))],
            };
            let kl = match k_lower(fixed, &spec) {
                Ok(kl) => kl,
                Err(FxrError::DegenerateAngle { .. }) => return vec![blank("degenerate-angle".into())],
                Err(e) => return vec![blank(format!("failed: {e}"))],
            };
            offsets
                .iter()
                .map(|&off| {
                    let k = kl.ceil() as u32 + off;
                    match solve_free_pair(mode, fixed, &spec, k) {
                        Ok(s) => SweepRow {
                            k: Some(k),
                            free1: Some(s.free_pair.0),
                            free2: Some(s.free_pair.1),
                            residual_real: Some(s.residual_real),
                            residual_imag: Some(s.residual_imag),
                            success: Some(s.certified_success_prob),
                            status: "certified".into(),
                            ..blank(String::new())
                        },
                        Err(e) => SweepRow { k: Some(k), ..blank(format!("failed: {e}")) },
                    }
                })
                .collect()
        })
        .collect()
}

fn cmd_sweep(a: &SweepArgs) -> Result<Output, FxrError> {
    let modes = match a.mode {
        SweepMode::Alpha => vec![Mode::Alpha],
        SweepMode::Beta => vec![Mode::Beta],
        SweepMode::Both => vec![Mode::Alpha, Mode::Beta],
    };
    let fixed: Vec<f64> =
        if a.fixed.is_empty() { (0..10).map(|i| (0.1 + 0.2 * i as f64) * PI).collect() } else { a.fixed.clone() };
    let rows = sweep_rows(&modes, &a.lambda, &fixed, &a.k_offsets);
    let opt = |x: Option<f64>| x.map(|v| format!("{v:.16e}")).unwrap_or_default();
    let mut out = String::from("mode,lambda,fixed,k,free1,free2,residual_real,residual_imag,success,status\n");
    for r in &rows {
        let _ = writeln!(
            out,
            "{},{:.16e},{:.16e},{},{},{},{},{},{},{}",
            r.mode,
            r.lambda,
            r.fixed,
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            opt(r.free1),
            opt(r.free2),
            opt(r.residual_real),
            opt(r.residual_imag),
            opt(r.success),
            r.status.replace(',', ";")
        );
    }
    let failed = rows.iter().filter(|r| r.status.starts_with("failed")).count();
    let mut o = emit(out, &a.output)?;
    if failed > 0 {
        o.code = EXIT_INTERNAL;
        o.stderr = format!("error: {failed} of {} cells failed certification\n", rows.len());
    }
    Ok(o)
}

fn join(s: &[usize]) -> String {
    s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_hamming(a: &HammingArgs) -> Result<Output, FxrError> {
    let inst = match (&a.secret, a.random_secret) {
        (Some(s), _) => {
            let letters = s
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| FxrError::InvalidArgument(format!("bad secret '{s}': expected e.g. 3,1")))?;
            if a.n.is_some_and(|n| n != letters.len()) {
                return Err(FxrError::InvalidArgument("--n does not match the secret length".into()));
            }
            HammingInstance::new(a.k, letters)?
        }
        (None, Some(seed)) => {
            let n = a.n.ok_or_else(|| FxrError::InvalidArgument("--random-secret needs --n".into()))?;
            HammingInstance::random(a.k, n, &mut ChaCha8Rng::seed_from_u64(seed))?
        }
        (None, None) => return Err(FxrError::InvalidArgument("give --secret or --random-secret".into())),
    };
    let out = identify_secret(&inst)?;
    let rep = HammingReport {
        k: inst.k,
        n: inst.n,
        secret: join(&inst.secret),
        recovered: join(&out.recovered),
        exact: out.recovered == inst.secret,
        oracle_queries: out.oracle_queries,
        general_alpha_oracle_calls: out.general_alpha_oracle_calls,
        k_iter: out.k_iter,
        success_mass: out.success_mass,
        beta1: out.solution.free_pair.0,
        beta2: out.solution.free_pair.1,
    };
    Ok(Output::ok(to_json(&rep, a.pretty)))
}

pub fn classic_report(method: Method, lambda: f64) -> Result<ClassicReport, FxrError> {
    let spec = SearchSpec::new(lambda)?;
    let c = classic::params(method, &spec)?;
    let p = c.success_probability(&spec);
    Ok(ClassicReport {
        method,
        lambda,
        k_opt: c.k_opt,
        k_used: c.k_used,
        params: c.params,
        oracle_calls: c.phase_sequence.oracle_calls(),
        schedule: c.phase_sequence,
        success_probability: p,
        certified: p > CERTIFY_THRESHOLD,
    })
}

fn cmd_classic(a: &ClassicArgs) -> Result<Output, FxrError> {
    Ok(Output::ok(to_json(&classic_report(a.method, a.lambda)?, a.pretty)))
}
