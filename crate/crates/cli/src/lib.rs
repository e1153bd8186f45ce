//! `ampsum` command-line front end.
//!
//! Exit codes: `0` success, `1` an invariant failed during `verify`, `2` bad
//! flags, unreadable input or a violated precondition.

pub mod error;
pub mod format;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use ampsum_core::apps::{integrate_midpoint, partial_sum_via_circuit, sin_pi_integral, IntegrationSpec};
use ampsum_core::{
    amplitude_of_zero, apply_circuit, build_partial_sum_circuit, build_weighted_circuit, decompose,
    expected_gate_count, Circuit, ComplexAmp, WeightSpec,
};
use clap::{Parser, Subcommand, ValueEnum};

pub use error::CliError;
use format::{emit_circuit_text, emit_qasm, format_significant, parse_reals, parse_state, read_file, write_atomic};
use verify::{run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const SUM_DIGITS: usize = 15;

#[derive(Debug, Parser)]
#[command(name = "ampsum", version, about = "Partial sums of quantum amplitudes via O(log M) circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Qasm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// f(x) = sin(πx)
    SinPi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize the partial-sum (or weighted) circuit for M on n qubits.
    Build {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// JSON array of popcount(M) - 1 weights in [-1, 1].
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a state file and report the |0⟩ amplitude and partial sum.
    Sum {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Midpoint-rule integral of f over [0, M/2^n].
    Integrate {
        #[arg(long, value_enum, conflicts_with = "samples", requires = "n")]
        function: Option<Preset>,
        #[arg(long)]
        n: Option<usize>,
        /// JSON array of 2^n integrand values at the midpoints.
        #[arg(long, conflicts_with = "n")]
        samples: Option<PathBuf>,
        #[arg(long)]
        m: usize,
    },
    /// Sweep every invariant over 2 ≤ M ≤ 2^n for n up to --n-max.
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 25)]
        weighted_trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Build { m, n, weights, format, out: path } => {
            cmd_build(m, n, weights, format, path, out).map(|_| EXIT_OK)
        }
        Command::Sum { state, m, weights } => cmd_sum(state, m, weights, out).map(|_| EXIT_OK),
        Command::Integrate { function, n, samples, m } => {
            cmd_integrate(function, n, samples, m, out).map(|_| EXIT_OK)
        }
        Command::Verify { n_max, weighted_trials, seed } => {
            cmd_verify(n_max, weighted_trials, seed, out)
        }
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

fn load_weights(path: &Path) -> Result<WeightSpec, CliError> {
    Ok(WeightSpec::new(parse_reals(&read_file(path)?)?)?)
}

fn synthesize(m: usize, n: usize, weights: Option<&PathBuf>) -> Result<Circuit, CliError> {
    Ok(match weights {
        Some(path) => build_weighted_circuit(m, n, &load_weights(path)?)?,
        None => build_partial_sum_circuit(m, n)?,
    })
}

fn cmd_build(
    m: usize,
    n: usize,
    weights: Option<PathBuf>,
    format: OutputFormat,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let circuit = synthesize(m, n, weights.as_ref())?;
    let d = decompose(m, n)?;
    let formula = if d.is_power_of_two() { "r" } else { "l_k + 2k" };
    let note = format!("{} ({formula})", expected_gate_count(&d));
    let (body, comment) = match format {
        OutputFormat::Text => (emit_circuit_text(&circuit), "#"),
        OutputFormat::Qasm => (emit_qasm(&circuit, Some(&note)), "//"),
    };
    let stats = format!("gates: {}\ndepth: {}\n", circuit.len(), circuit.depth());
    match path {
        Some(path) => {
            write_atomic(&path, &body)?;
            out.write_all(stats.as_bytes()).map_err(stdout_err)?;
        }
        None => {
            out.write_all(body.as_bytes()).map_err(stdout_err)?;
            for line in stats.lines() {
                writeln!(out, "{comment} {line}").map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}

fn format_complex(c: ComplexAmp) -> String {
    let sign = if c.im < 0.0 { '-' } else { '+' };
    format!(
        "{} {sign} {}i",
        format_significant(c.re, SUM_DIGITS),
        format_significant(c.im.abs(), SUM_DIGITS)
    )
}

fn cmd_sum(state: PathBuf, m: usize, weights: Option<PathBuf>, out: &mut dyn Write) -> Result<(), CliError> {
    let state = parse_state(&read_file(&state)?)?;
    match weights {
        None => {
            let (c0, s_m) = partial_sum_via_circuit(&state, m)?;
            writeln!(out, "c0 = {}", format_complex(c0)).map_err(stdout_err)?;
            writeln!(out, "S_M = {}", format_complex(s_m)).map_err(stdout_err)?;
        }
        Some(path) => {
            let circuit = build_weighted_circuit(m, state.n_qubits(), &load_weights(&path)?)?;
            let c0 = amplitude_of_zero(&apply_circuit(&circuit, &state)?);
            // the weighted sum is the amplitude itself; there is no 1/√M factor to undo
            writeln!(out, "c0 = {}", format_complex(c0)).map_err(stdout_err)?;
        }
    }
    Ok(())
}

fn cmd_integrate(
    function: Option<Preset>,
    n: Option<usize>,
    samples: Option<PathBuf>,
    m: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (spec, exact) = match (function, n, samples) {
        (Some(Preset::SinPi), Some(n), None) => {
            if n > ampsum_core::simulator::MAX_SIM_QUBITS {
                return Err(ampsum_core::Error::TooManyQubits { n, max: ampsum_core::simulator::MAX_SIM_QUBITS }.into());
            }
            let spec = IntegrationSpec::from_fn(n, m, |x| (std::f64::consts::PI * x).sin())?;
            let exact = sin_pi_integral(spec.upper_limit());
            (spec, Some(exact))
        }
        (None, None, Some(path)) => (IntegrationSpec::new(m, parse_reals(&read_file(&path)?)?)?, None),
        _ => {
            return Err(CliError::Invalid(
                "give either --function <preset> --n <n> or --samples <file>".into(),
            ))
        }
    };
    let estimate = integrate_midpoint(&spec)?;
    writeln!(out, "upper_limit = {}", spec.upper_limit()).map_err(stdout_err)?;
    writeln!(out, "estimate = {estimate}").map_err(stdout_err)?;
    if let Some(exact) = exact {
        writeln!(out, "exact = {exact}").map_err(stdout_err)?;
        writeln!(out, "abs_error = {:e}", (estimate - exact).abs()).map_err(stdout_err)?;
    }
    Ok(())
}

fn cmd_verify(n_max: usize, weighted_trials: usize, seed: u64, out: &mut dyn Write) -> Result<i32, CliError> {
    if n_max == 0 || n_max > verify::MAX_N {
        return Err(CliError::Invalid(format!("--n-max must be in 1..={}, got {n_max}", verify::MAX_N)));
    }
    let report = run_verify(&VerifyConfig { n_max, weighted_trials, seed });
    for f in &report.failures {
        writeln!(out, "FAIL M={} n={} invariant={} max_deviation={:e}", f.m, f.n, f.invariant, f.deviation)
            .map_err(stdout_err)?;
    }
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{verdict}: {} cells, {} checks, {} failures",
        report.cells,
        report.checks,
        report.failures.len()
    )
    .map_err(stdout_err)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_INVARIANT })
}
