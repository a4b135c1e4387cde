//! `framecalc`: frame diagnostics, α-frames, dual approximations and the Gabor check.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage or input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use framecalc::dual_approx::{run_convergence, SchemeId};
use framecalc::frame::{self, FrameDiagnostics};
use framecalc::gabor::{self, GaborParams, SampledSignal};
use framecalc::io::{format_f64, frame_to_json, parse_frame, to_json_string};
use framecalc::worked_examples::{self, ExampleOptions};
use framecalc::{Error, FrameSpec};
use serde::Serialize;

const EXIT_MATH: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Tightness tolerance used by `gabor` to decide its exit status.
const GABOR_ACCEPTANCE: f64 = 0.01;

#[derive(Parser, Debug)]
#[command(name = "framecalc", version, about = "Finite frames, their α-frames and dual approximations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, optimal bounds and frame status of a frame file.
    Analyze(InputArgs),
    /// Emit the α-frame S^α φᵢ with its frame bounds.
    Alpha {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Emit the canonical dual frame S⁻¹ φᵢ.
    Dual(InputArgs),
    /// Convergence table of an approximation scheme, as CSV.
    Perturb(PerturbArgs),
    /// Recompute the reference examples and print a pass/fail table.
    Examples {
        /// Relative tolerance for quadrature-based Gabor claims.
        #[arg(long, default_value_t = worked_examples::DEFAULT_GABOR_TOLERANCE)]
        gabor_tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tightness of the smooth-window Gabor frame on its own window.
    Gabor(GaborArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Frame JSON file, or `-` for standard input.
    input: PathBuf,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PerturbArgs {
    input: PathBuf,
    #[arg(long)]
    scheme: SchemeId,
    /// Lower frame bound; defaults to the smallest eigenvalue of S.
    #[arg(long = "A")]
    a: Option<f64>,
    /// Upper frame bound; defaults to the largest eigenvalue of S.
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long = "N-max", default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GaborArgs {
    #[arg(long, default_value_t = GaborParams::DEFAULT_P0)]
    p0: f64,
    #[arg(long, default_value_t = GaborParams::DEFAULT_Q0)]
    q0: f64,
    /// Defaults to q0/64.
    #[arg(long = "grid-step")]
    grid_step: Option<f64>,
    /// Defaults to 12·q0.
    #[arg(long)]
    halfwidth: Option<f64>,
    #[arg(long = "M", default_value_t = GaborParams::DEFAULT_M)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn math(message: impl Into<String>) -> Self {
        Self { code: EXIT_MATH, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::NotAFrame { .. }
            | Error::NoConvergence { .. }
            | Error::Domain { .. }
            | Error::NotPositive { .. } => EXIT_MATH,
            _ => EXIT_USAGE,
        };
        Self { code, message: err.to_string() }
    }
}

/// Output of a command: text to emit, and whether it reports a mathematical failure.
struct Outcome {
    text: String,
    failed: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, failed: None }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("framecalc: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let (outcome, out) = match command {
        Command::Analyze(io) => (analyze(&read_frame(&io.input)?)?, io.out),
        Command::Alpha { io, alpha } => (Outcome::ok(alpha_json(&read_frame(&io.input)?, alpha)?), io.out),
        Command::Dual(io) => (Outcome::ok(alpha_json(&read_frame(&io.input)?, -1.0)?), io.out),
        Command::Perturb(args) => {
            let out = args.out.clone();
            (perturb(args)?, out)
        }
        Command::Examples { gabor_tolerance, out } => (examples(gabor_tolerance)?, out),
        Command::Gabor(args) => {
            let out = args.out.clone();
            (gabor_report(args)?, out)
        }
    };
    emit(&outcome.text, out.as_deref())?;
    match outcome.failed {
        Some(message) => Err(Failure::math(message)),
        None => Ok(()),
    }
}

fn read_frame(path: &Path) -> Result<FrameSpec, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
    };
    parse_frame(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes to `path` through a temporary file in the same directory, or to stdout.
fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut stdout = io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(|e| Failure::usage(format!("writing output: {e}")));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: io::Error| Failure::usage(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(text.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeReport {
    dim: usize,
    count: usize,
    lambda_min: f64,
    lambda_max: f64,
    optimal_bounds: Option<[f64; 2]>,
    is_frame: bool,
    kernel_trivial: bool,
    inverse_norm: Option<f64>,
    tight: bool,
    eigenvalues: Vec<f64>,
}

fn analyze(frame: &FrameSpec) -> Result<Outcome, Failure> {
    let d: FrameDiagnostics = frame::diagnostics(frame)?;
    let report = AnalyzeReport {
        dim: frame.dim(),
        count: frame.len(),
        lambda_min: d.lambda_min,
        lambda_max: d.lambda_max,
        optimal_bounds: d.optimal_bounds().map(|(a, b)| [a, b]),
        is_frame: d.is_frame,
        kernel_trivial: d.kernel_trivial,
        inverse_norm: d.inverse_norm,
        tight: d.is_tight(),
        eigenvalues: d.eigenvalues.clone(),
    };
    let text = to_json_string(&report)? + "\n";
    let failed = (!d.is_frame).then(|| format!("not a frame: lambda_min = {}", format_f64(d.lambda_min)));
    Ok(Outcome { text, failed })
}

fn alpha_json(frame: &FrameSpec, alpha: f64) -> Result<String, Failure> {
    let out = frame::alpha_frame(frame, alpha)?;
    Ok(frame_to_json(&out)? + "\n")
}

fn perturb(args: PerturbArgs) -> Result<Outcome, Failure> {
    let frame = read_frame(&args.input)?;
    let (a, b) = match (args.a, args.b) {
        (Some(a), Some(b)) => (a, b),
        (a, b) => {
            let d = frame::diagnostics(&frame)?;
            let (lo, hi) = d
                .optimal_bounds()
                .ok_or_else(|| Failure::math(format!("not a frame: lambda_min = {}", format_f64(d.lambda_min))))?;
            (a.unwrap_or(lo), b.unwrap_or(hi))
        }
    };
    let report = run_convergence(&frame, args.scheme, a, b, args.n_max, args.samples, args.seed)?;
    let violations: Vec<usize> = report.violations().map(|r| r.n).collect();
    let failed =
        (!violations.is_empty()).then(|| format!("measured error exceeds the analytical bound at N = {violations:?}"));
    Ok(Outcome { text: report.to_csv(), failed })
}

fn examples(gabor_tolerance: f64) -> Result<Outcome, Failure> {
    if !(gabor_tolerance.is_finite() && gabor_tolerance >= 0.0) {
        return Err(Failure::usage("--gabor-tolerance must be a non-negative number"));
    }
    let claims = worked_examples::run_all(&ExampleOptions { gabor_tolerance })?;
    let mut text = String::new();
    for c in &claims {
        text.push_str(&format!(
            "{} example {}: {} (measured {}, tolerance {})\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.example,
            c.name,
            format_f64(c.measured),
            format_f64(c.tolerance)
        ));
    }
    let failures = claims.iter().filter(|c| !c.passed).count();
    text.push_str(&format!("{} of {} claims passed\n", claims.len() - failures, claims.len()));
    let failed = (failures > 0).then(|| format!("{failures} claim(s) failed"));
    Ok(Outcome { text, failed })
}

fn gabor_report(args: GaborArgs) -> Result<Outcome, Failure> {
    let base = GaborParams::new(args.p0, args.q0)?;
    let params = base
        .with_grid(args.grid_step.unwrap_or(base.grid_step), args.halfwidth.unwrap_or(base.grid_halfwidth))?
        .with_modulations(args.m);
    let report = gabor::tightness_check(&SampledSignal::window(&params), &params)?;
    let text = to_json_string(&report)? + "\n";
    let failed = (report.relative_error > GABOR_ACCEPTANCE)
        .then(|| format!("relative error {} exceeds {GABOR_ACCEPTANCE}", format_f64(report.relative_error)));
    Ok(Outcome { text, failed })
}
