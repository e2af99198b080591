//! Command-line front end for `spin-entropy`.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 state not normalized,
//! 4 I/O failure, 5 self-test discrepancy (`random`), 1 internal error.
//!
//! With `--json`, standard output carries exactly one JSON document; all
//! human-readable text (warnings included) goes to standard error.

pub mod state_file;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use spin_entropy::batch::{equivalence_check, EquivalenceSummary};
use spin_entropy::{
    analyze, classify_entanglement, entropy_from_magnitude, mean_spin_vector, measure, schmidt_decompose,
    Atom, Axis, Entanglement, EntropyReport, Execution, MeanSpinVector, MeasurementEstimate,
    PureTwoQubitState, DEFAULT_EPS,
};

use state_file::StateFile;

/// Threshold on both discrepancy maxima reported by `random`.
pub const SELF_TEST_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Internal = 1,
    Usage = 2,
    Normalization = 3,
    Io = 4,
    SelfTest = 5,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "spinent",
    version,
    about = "Two-atom entanglement entropy from the mean spin vector"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy, spin magnitudes and Schmidt coefficients of a state file
    Analyze(AnalyzeArgs),
    /// Simulated three-axis spin measurements on one atom
    Simulate(SimulateArgs),
    /// Tabulate entropy against spin magnitude as CSV
    Sweep(SweepArgs),
    /// Check both entropy routes agree on Haar-random states
    Random(RandomArgs),
}

#[derive(Args, Debug)]
struct StateArgs {
    /// Path to the state file
    state: PathBuf,
    /// Rescale states whose norm is off by more than 1e-6 instead of failing
    #[arg(long)]
    renormalize: bool,
    /// Emit a JSON report on stdout
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    state: StateArgs,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Shots per axis
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Which atom to measure
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    atom: u8,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Number of rows, r uniform on [0, 1/2] inclusive
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
    points: u64,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { ExitCode::Usage as i32 };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out, err),
        Command::Simulate(a) => cmd_simulate(&a, out, err),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Random(a) => cmd_random(&a, out),
    };
    match result {
        Ok(()) => ExitCode::Success as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code as i32
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::new(ExitCode::Io, e.to_string())
}

fn internal(e: spin_entropy::Error) -> CliError {
    CliError::new(ExitCode::Internal, e.to_string())
}

fn load_state(
    args: &StateArgs,
    err: &mut dyn Write,
) -> Result<(PureTwoQubitState, Option<String>), CliError> {
    let text = std::fs::read_to_string(&args.state)
        .map_err(|e| CliError::new(ExitCode::Io, format!("{}: {e}", args.state.display())))?;
    let file = StateFile::parse(&text)
        .map_err(|e| CliError::new(ExitCode::Usage, format!("{}: {e}", args.state.display())))?;
    let loaded = file.load(args.renormalize).map_err(|n| {
        CliError::new(
            ExitCode::Normalization,
            format!(
                "{}: amplitude norm {n} differs from 1 by more than {} (use --renormalize)",
                args.state.display(),
                state_file::FILE_NORM_TOL
            ),
        )
    })?;
    if loaded.renormalized {
        writeln!(
            err,
            "warning: renormalized state (file norm {})",
            loaded.file_norm
        )
        .map_err(io_err)?;
    }
    Ok((loaded.state, file.label))
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::new(ExitCode::Io, e.to_string()))?;
    writeln!(out).map_err(io_err)
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSummary {
    pub c1: f64,
    pub c2: f64,
    pub c1_sq: f64,
    pub c2_sq: f64,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub label: Option<String>,
    pub report: EntropyReport,
    pub schmidt: SchmidtSummary,
    pub mean_spin_atom1: MeanSpinVector,
    pub mean_spin_atom2: MeanSpinVector,
    pub classification: Entanglement,
}

pub fn analyze_state(psi: &PureTwoQubitState, label: Option<String>) -> spin_entropy::Result<AnalyzeOutput> {
    let report = analyze(psi)?;
    let d = schmidt_decompose(psi);
    let (c1_sq, c2_sq) = d.probabilities();
    Ok(AnalyzeOutput {
        label,
        schmidt: SchmidtSummary {
            c1: d.c1,
            c2: d.c2,
            c1_sq,
            c2_sq,
            degenerate: d.degenerate,
        },
        mean_spin_atom1: mean_spin_vector(psi, Atom::One)?,
        mean_spin_atom2: mean_spin_vector(psi, Atom::Two)?,
        classification: classify_entanglement(report.magnitude_atom1, DEFAULT_EPS),
        report,
    })
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let (psi, label) = load_state(&args.state, err)?;
    let a = analyze_state(&psi, label).map_err(internal)?;
    if args.state.json {
        return write_json(out, &a);
    }
    let r = &a.report;
    let j1 = a.mean_spin_atom1;
    let j2 = a.mean_spin_atom2;
    let text = format!(
        "state: {label}\n\
         S (eigenvalues, atom 1) = {:.9}\n\
         S (eigenvalues, atom 2) = {:.9}\n\
         S (from |<J1>|)         = {:.9}\n\
         <J1> = ({:.9}, {:.9}, {:.9})  r1 = {:.9}\n\
         <J2> = ({:.9}, {:.9}, {:.9})  r2 = {:.9}\n\
         C1 = {:.9}  C2 = {:.9}  C1^2 = {:.9}  C2^2 = {:.9}{}\n\
         entangled = {}\n",
        r.s_eigen_atom1,
        r.s_eigen_atom2,
        r.s_from_magnitude,
        j1.jx,
        j1.jy,
        j1.jz,
        r.magnitude_atom1,
        j2.jx,
        j2.jy,
        j2.jz,
        r.magnitude_atom2,
        a.schmidt.c1,
        a.schmidt.c2,
        a.schmidt.c1_sq,
        a.schmidt.c2_sq,
        if a.schmidt.degenerate {
            "  (degenerate: local bases not unique)"
        } else {
            ""
        },
        r.entangled,
        label = a.label.as_deref().unwrap_or("-"),
    );
    out.write_all(text.as_bytes()).map_err(io_err)
}

// ---------------------------------------------------------------------------
// simulate

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValues {
    pub mean_spin: MeanSpinVector,
    pub magnitude: f64,
    pub entropy: f64,
    pub entangled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateOutput {
    pub label: Option<String>,
    pub estimate: MeasurementEstimate,
    pub exact: ExactValues,
}

pub fn simulate_state(
    psi: &PureTwoQubitState,
    label: Option<String>,
    atom: Atom,
    shots: u64,
    seed: u64,
) -> spin_entropy::Result<SimulateOutput> {
    let estimate = measure(psi, atom, shots, seed)?;
    let j = mean_spin_vector(psi, atom)?;
    let r = j.magnitude();
    Ok(SimulateOutput {
        label,
        estimate,
        exact: ExactValues {
            mean_spin: j,
            magnitude: r,
            entropy: entropy_from_magnitude(r.min(0.5))?,
            entangled: classify_entanglement(r, DEFAULT_EPS).is_entangled(),
        },
    })
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let (psi, label) = load_state(&args.state, err)?;
    let atom = Atom::from_number(args.atom).expect("range-checked by clap");
    let s = simulate_state(&psi, label, atom, args.shots, args.seed).map_err(internal)?;
    if args.state.json {
        return write_json(out, &s);
    }
    let e = &s.estimate;
    let mut text = format!(
        "state: {}\natom: {}  shots per axis: {}  total shots: {}  seed: {}\n\
         axis  {:>21}  {:>12}  {:>12}  {:>12}\n",
        s.label.as_deref().unwrap_or("-"),
        atom.number(),
        e.shots_per_axis,
        e.total_shots,
        e.seed,
        "plus/shots",
        "estimate",
        "std_err",
        "exact",
    );
    let spin = [e.spin.x, e.spin.y, e.spin.z];
    for axis in Axis::ALL {
        let c = e.counts[axis.index()];
        let a = spin[axis.index()];
        text += &format!(
            "{:<4}  {:>21}  {:>12.9}  {:>12.9}  {:>12.9}\n",
            format!("{axis:?}"),
            format!("{}/{}", c.plus_count, c.shots),
            a.value,
            a.std_err,
            s.exact.mean_spin.component(axis),
        );
    }
    let ent = &e.entropy;
    text += &format!(
        "magnitude: estimate {:.9} (raw {:.9}, std_err {:.9})  exact {:.9}\n\
         entropy:   estimate {:.9}  95% interval [{:.9}, {:.9}]  exact {:.9}\n\
         entangled: estimate {}  exact {}\n",
        ent.magnitude_estimate,
        ent.raw_magnitude,
        ent.magnitude_std_err,
        s.exact.magnitude,
        ent.entropy_estimate,
        ent.entropy_interval.0,
        ent.entropy_interval.1,
        s.exact.entropy,
        ent.entangled,
        s.exact.entangled,
    );
    out.write_all(text.as_bytes()).map_err(io_err)
}

// ---------------------------------------------------------------------------
// sweep

/// `(r, S(r))` for `points` values of `r` spread uniformly over `[0, ½]`.
pub fn sweep_rows(points: u64) -> Vec<(f64, f64)> {
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            let r = 0.5 * (i as f64 / last);
            (r, entropy_from_magnitude(r).expect("r in [0, 1/2]"))
        })
        .collect()
}

/// CSV text with header `r,entropy_bits`, LF line endings. Numbers use the
/// shortest representation that parses back to the same `f64`.
pub fn sweep_csv(points: u64) -> String {
    let mut s = String::from("r,entropy_bits\n");
    for (r, e) in sweep_rows(points) {
        s += &format!("{r},{e}\n");
    }
    s
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult {
    let csv = sweep_csv(args.points);
    match &args.out {
        Some(path) => write_file(path, &csv),
        None => out.write_all(csv.as_bytes()).map_err(io_err),
    }
}

fn write_file(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| CliError::new(ExitCode::Io, format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// random

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomOutput {
    pub summary: EquivalenceSummary,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn random_check(count: usize, seed: u64) -> spin_entropy::Result<RandomOutput> {
    let summary = equivalence_check(count, seed, Execution::default())?;
    let passed = summary.max_entropy_gap < SELF_TEST_TOL && summary.max_magnitude_gap < SELF_TEST_TOL;
    Ok(RandomOutput {
        summary,
        tolerance: SELF_TEST_TOL,
        passed,
    })
}

fn cmd_random(args: &RandomArgs, out: &mut dyn Write) -> CliResult {
    let r = random_check(args.count as usize, args.seed).map_err(internal)?;
    let s = &r.summary;
    if args.json {
        write_json(out, &r)?;
    } else {
        let text = format!(
            "states: {}  seed: {}\n\
             max |S_eigen - S(r)|       = {:.3e}  (atom 1 {:.3e}, atom 2 {:.3e})\n\
             max |r1 - r2|              = {:.3e}\n\
             max |(C1^2 - C2^2)/2 - r|  = {:.3e}\n\
             min Schmidt roundtrip fidelity = {:.17}\n\
             {}\n",
            s.count,
            s.seed,
            s.max_entropy_gap,
            s.max_entropy_gap_atom1,
            s.max_entropy_gap_atom2,
            s.max_magnitude_gap,
            s.max_schmidt_gap,
            s.min_roundtrip_fidelity,
            if r.passed { "PASS" } else { "FAIL" },
        );
        out.write_all(text.as_bytes()).map_err(io_err)?;
    }
    if r.passed {
        Ok(())
    } else {
        Err(CliError::new(
            ExitCode::SelfTest,
            format!(
                "discrepancy above {SELF_TEST_TOL}: entropy {:.3e}, magnitude {:.3e}",
                s.max_entropy_gap, s.max_magnitude_gap
            ),
        ))
    }
}
