//! Command-line front end: scene files in, deterministic JSON and CSV out.
//!
//! Exit codes: 0 on success, 2 when a mathematical precondition fails, 1 for
//! I/O, parse and usage errors.

mod commands;
mod output;
mod scene;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use output::{canonical, round12};
pub use scene::Scene;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] sispace::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.rule().is_some() => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "sispace", version, about = "Shift-invariant space calculus in weighted Sobolev spaces")]
pub struct Cli {
    /// Absolute tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_abs: f64,
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol_rel: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Space,
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WfOp {
    Conv,
    Prod,
    Shift,
    Fgsi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds of the generator bank of a scene.
    FrameCheck {
        #[arg(long)]
        scene: PathBuf,
        /// Sobolev order (defaults to the scene order).
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        /// Also run the generator diagnostics of condition (A).
        #[arg(long)]
        condition_a: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthogonal projection of a target scene onto the span of a bank scene.
    Project {
        #[arg(long)]
        bank: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convolution of two finitely generated expansions.
    Conv {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Order loss beyond d/2 (defaults to half the available margin).
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convolution of a delta train with an expansion.
    DeltaConv {
        /// Coefficient sequence of the train.
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        f: PathBuf,
        /// Weight order of the train.
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a delay-differential equation with a shift-invariant right-hand side.
    DdeSolve {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Fixed growth order instead of the fitted one.
        #[arg(long)]
        n: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Solution samples on the space grid (x, re, im).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Apply a Fourier multiplier.
    Multiplier {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        f: PathBuf,
        /// Apply even when the Mikhlin check fails.
        #[arg(long)]
        warn_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply by a periodic function.
    Product {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_enum, default_value_t = PathArg::Space)]
        path: PathArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wave-front set bound of a convolution, product or shift.
    WfBound {
        #[arg(long, value_enum)]
        op: WfOp,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Duality pairing of F (in H^-s) with theta (in H^s, s = theta order).
    Pair {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        theta: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sobolev and coefficient norms of a scene.
    Norms {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        /// Exponent of the coefficient norms.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Fourier samples of the scene (t, re, im).
        #[arg(long)]
        fourier_csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

pub(crate) fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn configure_threads() {
    let n = std::env::var("SISPACE_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    if n > 0 {
        // A pool built earlier in the same process wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Run one command, writing the report to `stdout` unless `--out` is given.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    configure_threads();
    match commands::dispatch(&cli) {
        Ok((report, out)) => {
            let text = canonical(&report);
            let res = match out {
                Some(p) => write_text(p, &text),
                None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
            };
            match res {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
