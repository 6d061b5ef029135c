use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod presets;

/// Berezin ranges of composition operators, numerical ranges and unitary
/// orbits of matrices.
#[derive(Debug, Parser)]
#[command(name = "berezin-lab", version, args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the Berezin range of a composition operator.
    Range(RangeArgs),
    /// Sample a Berezin range and test it for convexity.
    Convexity(RangeArgs),
    /// Boundary of the numerical range of a matrix.
    Numrange(NumrangeArgs),
    /// Diagonals of unitary conjugates of a matrix.
    Orbit(OrbitArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Fock,
    Dirichlet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Uniform,
    Tanh,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// `key=value` file with defaults for any of these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    /// One of fig1, fig2, fig3, fig3-right, fig4, fig5.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, value_enum)]
    space: Option<Space>,
    /// e.g. `elliptic:zeta=0.5+0.866i`, `blaschke:alpha=0.5@pi/3`.
    #[arg(long)]
    symbol: Option<String>,
    #[arg(long)]
    n_r: Option<usize>,
    #[arg(long)]
    n_theta: Option<usize>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, value_enum)]
    r_spacing: Option<Spacing>,
    /// Convexity tolerance; defaults to 1e-3 times the cloud diameter.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for chord-pair sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct NumrangeArgs {
    /// Rows separated by `;`, or a file with one row per line.
    #[arg(long)]
    matrix: String,
    #[arg(long, default_value_t = 360)]
    n_theta: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Rows separated by `;`, or a file with one row per line.
    #[arg(long)]
    matrix: String,
    /// Haar samples; 2x2 matrices use the explicit families unless given.
    #[arg(long)]
    haar: Option<usize>,
    #[arg(long, default_value_t = 256)]
    n_a: usize,
    #[arg(long, default_value_t = 256)]
    n_b: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inclusion tolerance; defaults to 1e-10 (1 + |T|_F).
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated criterion numbers; all when omitted.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

/// Exit statuses.
pub const EXIT_CONFIG: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

/// Splices `--config` file entries in right after the subcommand name.
fn expand_args(raw: Vec<String>) -> Result<Vec<String>, config::ConfigError> {
    let Some(path) = config::find_config_flag(&raw) else {
        return Ok(raw);
    };
    let extra = config::config_args(path.as_ref())?;
    let mut out = Vec::with_capacity(raw.len() + extra.len());
    out.extend(raw.iter().take(2).cloned());
    out.extend(extra);
    out.extend(raw.into_iter().skip(2));
    Ok(out)
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("BEREZIN_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("BEREZIN_LAB_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let raw: Vec<String> = match std::env::args_os().map(OsString::into_string).collect() {
        Ok(v) => v,
        Err(bad) => {
            eprintln!("error: argument is not valid UTF-8: {bad:?}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let args = match expand_args(raw) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_CONFIG),
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_CONFIG);
    }
    let outcome = match cli.command {
        Command::Range(a) => commands::range(a, false),
        Command::Convexity(a) => commands::range(a, true),
        Command::Numrange(a) => commands::numrange(a),
        Command::Orbit(a) => commands::orbit(a),
        Command::Verify(a) => commands::verify(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
