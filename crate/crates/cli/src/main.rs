//! `k2pm` command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod artifact;
mod commands;
mod data;

/// Failure reported on stderr as `error: <code>: <message>`.
#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit 2.
    Validation { code: String, message: String },
    /// Numerical failure; exit 3.
    Numeric { code: String, message: String },
    /// File system or encoding trouble; exit 2.
    Io { message: String },
}

impl CliError {
    pub fn validation(code: &str, message: impl Into<String>) -> CliError {
        CliError::Validation {
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> CliError {
        CliError::Io {
            message: message.into(),
        }
    }

    pub fn csv(e: csv::Error) -> CliError {
        CliError::io(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation { .. } | CliError::Io { .. } => 2,
            CliError::Numeric { .. } => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation { code, message } | CliError::Numeric { code, message } => {
                write!(f, "{code}: {message}")
            }
            CliError::Io { message } => write!(f, "io: {message}"),
        }
    }
}

impl From<k2pm::Error> for CliError {
    fn from(e: k2pm::Error) -> CliError {
        let code = e.code().to_string();
        let message = e.to_string();
        if e.is_validation() {
            CliError::Validation { code, message }
        } else {
            CliError::Numeric { code, message }
        }
    }
}

/// Command output and whether all checks passed.
pub struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Outcome {
        Outcome { text, pass: true }
    }

    pub fn with_status(text: String, pass: bool) -> Outcome {
        Outcome { text, pass }
    }
}

#[derive(Parser)]
#[command(name = "k2pm", version, about = "Interpolating splines minimizing a trigonometric-polynomial seminorm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a spline from samples and write a JSON artifact.
    Build(BuildArgs),
    /// Evaluate an artifact on a grid.
    Eval(EvalArgs),
    /// Run the invariant suite for one configuration.
    Verify(VerifyArgs),
    /// Compare the fast path with the dense reference solve.
    Compare(CompareArgs),
    /// Time the pipeline over a range of N.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
pub struct ProblemArgs {
    /// Seminorm order (m >= 2).
    #[arg(long)]
    pub m: usize,
    /// Frequency omega > 0.
    #[arg(long)]
    pub omega: f64,
    /// Number of intervals; nodes are beta/N for beta = 0..=N.
    #[arg(long)]
    pub n: usize,
    /// CSV file with rows `beta,value` or `x,value`.
    #[arg(long, conflicts_with = "preset")]
    pub input: Option<PathBuf>,
    /// sin, cos, poly:<alpha>, runge or random:<seed>.
    #[arg(long)]
    pub preset: Option<String>,
    /// Seed for `random` without an explicit seed and for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// json writes the artifact, csv only the coefficients.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Spline artifact written by `build`.
    #[arg(long)]
    pub input: PathBuf,
    /// Number of equispaced points on [0, 1].
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// Explicit evaluation points, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Option<Vec<f64>>,
    /// Evaluate outside [0, 1] instead of failing.
    #[arg(long)]
    pub allow_extrapolation: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Tolerance for the oracle comparison.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Values of N, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub sizes: Vec<usize>,
    /// Largest N for which the dense solve is timed.
    #[arg(long, default_value_t = 500)]
    pub dense_max: usize,
    /// Repetitions per size; the minimum is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(e.to_string())),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (outcome, path) = match &cli.command {
        Command::Build(a) => (commands::build(a)?, a.output.as_ref()),
        Command::Eval(a) => (commands::eval(a)?, a.output.as_ref()),
        Command::Verify(a) => (commands::verify(a)?, a.output.as_ref()),
        Command::Compare(a) => (commands::compare_cmd(a)?, a.output.as_ref()),
        Command::Bench(a) => (commands::bench(a)?, a.output.as_ref()),
    };
    write_output(path, &outcome.text)?;
    Ok(outcome)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("K2PM_LOG")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) if o.pass => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
