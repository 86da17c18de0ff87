//! `qutil`: run algorithms, compile circuits, profile scaling sweeps,
//! compute SWaP-C scores and utility verdicts, and render readiness
//! surveys. Every subcommand writes JSON artifacts, a Markdown summary and
//! a `manifest.json` into the output directory.
//!
//! Exit codes: 0 on success, 1 on configuration errors, 2 on runtime errors.

mod cmd;
mod config;
mod error;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{RunConfig, SimMode};
use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "qutil", version, about = "Quantum utility benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
pub struct Common {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory [default: qutil-out].
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Base seed; overrides the config file and QUTIL_SEED.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single benchmark application.
    Bench {
        #[command(subcommand)]
        action: BenchAction,
    },
    /// Compile a circuit JSON file to a gate set and topology.
    Compile(CompileArgs),
    /// Sweep an application over sizes and fit the resource scaling.
    Sweep(SweepArgs),
    /// Compute performance-per-joule scores.
    Score(ScoreArgs),
    /// Compare a quantum and a classical run outcome.
    Verdict(VerdictArgs),
    /// Emit the built-in application readiness survey.
    Survey(SurveyArgs),
    /// Render the survey together with measured sweep results.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum BenchAction {
    /// Run an application: vqe, varqite, qk, qvc, reuploading, qcbm, mirror.
    Run(BenchArgs),
}

#[derive(Args)]
pub struct BenchArgs {
    /// Application id.
    app: Option<String>,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    layers: Option<usize>,
    /// Number of toy data points when no dataset is given.
    #[arg(long)]
    points: Option<usize>,
    /// Optimizer sweeps, SPSA iterations or imaginary-time steps.
    #[arg(long)]
    iterations: Option<usize>,
    /// CSV dataset with feature columns and a trailing integer label.
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Hamiltonian text file, one `coefficient word` per line.
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Shorthand for `--mode exact`.
    #[arg(long, conflicts_with = "mode")]
    exact: bool,
    #[arg(long, value_enum)]
    mode: Option<SimMode>,
    #[arg(long)]
    shots: Option<u64>,
    /// Depolarizing probability for 1- and 2-qubit gates; implies noisy mode.
    #[arg(long)]
    noise: Option<f64>,
    /// Qubit counts for the mirror benchmark.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
}

#[derive(Args)]
pub struct CompileArgs {
    circuit: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
    /// linear, circular, grid or all_to_all [default: linear].
    #[arg(long)]
    topology: Option<String>,
    /// `default` or `ONE,ONE+TWO`, e.g. `RZ,RX+CNOT` [default: default].
    #[arg(long)]
    natives: Option<String>,
    /// Physical qubits on the device [default: circuit width].
    #[arg(long)]
    device_qubits: Option<usize>,
}

#[derive(Args)]
pub struct SweepArgs {
    app: Option<String>,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Swept variable, e.g. `N`, `|T|`, `q`, `t` or `L`.
    #[arg(long)]
    variable: Option<String>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    shots: Option<u64>,
}

#[derive(Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    common: Common,
    /// RunOutcome JSON files.
    #[arg(long = "outcome")]
    outcomes: Vec<PathBuf>,
    #[arg(long, requires_all = ["runtime", "power"])]
    performance: Option<f64>,
    #[arg(long)]
    runtime: Option<f64>,
    #[arg(long)]
    power: Option<f64>,
    #[arg(long)]
    volume: Option<f64>,
}

#[derive(Args)]
pub struct VerdictArgs {
    #[command(flatten)]
    common: Common,
    /// RunOutcome JSON of the quantum run.
    #[arg(long)]
    quantum: Option<PathBuf>,
    /// RunOutcome JSON of the classical run.
    #[arg(long)]
    classical: Option<PathBuf>,
    /// Similarity factor for volume, weight and cost [default: 2].
    #[arg(long)]
    factor: Option<f64>,
}

#[derive(Args)]
pub struct SurveyArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
pub struct ReportArgs {
    #[command(flatten)]
    common: Common,
    /// `sweep.json` files produced by `qutil sweep`.
    #[arg(long = "sweep")]
    sweeps: Vec<PathBuf>,
}

/// Loads the config file named by `--config`, overlays `flags` and
/// resolves the seed.
pub fn resolve(common: &Common, flags: RunConfig) -> CliResult<(RunConfig, u64)> {
    let base = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let flags = RunConfig { seed: common.seed, out: common.out.clone(), ..flags };
    let mut cfg = base.overlay(&flags);
    let seed = cfg.resolve_seed()?;
    Ok((cfg, seed))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Bench { action: BenchAction::Run(args) } => cmd::bench::run(args),
        Command::Compile(args) => cmd::compile::run(args),
        Command::Sweep(args) => cmd::sweep::run(args),
        Command::Score(args) => cmd::score::run_score(args),
        Command::Verdict(args) => cmd::score::run_verdict(args),
        Command::Survey(args) => cmd::survey::run_survey(args),
        Command::Report(args) => cmd::survey::run_report(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qutil: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

pub fn require<T>(value: Option<T>, what: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::config(format!("missing {what}")))
}
