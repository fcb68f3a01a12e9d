//! Batch front-end for the bounds in `clt_bounds`.
//!
//! `cltb run <config> --out <dir>` evaluates every instance of a JSON
//! experiment config, verifies it exactly or by Monte Carlo, and writes one
//! JSON report per instance plus `results.csv`. `cltb sweep` re-runs the
//! instances over a list of n, d or t values.
//!
//! Exit codes: 0 success, 1 a bound was violated, 2 usage or configuration
//! error, 3 numeric failure.

pub mod commands;
pub mod config;
pub mod error;
pub mod eval;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{run, sweep, SweepParam, RESULTS_FILE};
pub use config::{BoundKind, ExperimentConfig, InstanceConfig, Verification};
pub use error::{CliError, EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, EXIT_VIOLATION};
pub use eval::{evaluate, Evaluation, Outcome, Overrides, CSV_HEADER};

#[derive(Debug, Parser)]
#[command(name = "cltb", version, about = "Evaluate and verify Gaussian-approximation error bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OverrideArgs {
    /// Replaces every instance seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Replaces every Monte Carlo sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// Value of the free constant A used for verdicts.
    #[arg(long = "constant-A", value_name = "X")]
    constant_a: Option<f64>,
}

impl OverrideArgs {
    fn into_overrides(self) -> Result<Overrides, CliError> {
        if let Some(a) = self.constant_a {
            if !(a.is_finite() && a >= 0.0) {
                return Err(CliError::Usage(format!("--constant-A {a} must be finite and non-negative")));
            }
        }
        Ok(Overrides { seed: self.seed, samples: self.samples, constant_a: self.constant_a })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every instance and write reports.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Evaluate every instance over a list of parameter values.
    Sweep {
        config: PathBuf,
        #[arg(long, value_enum)]
        vary: SweepParam,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Run { config, out, overrides } => overrides.into_overrides().and_then(|ov| run(&config, &out, &ov)),
        Command::Sweep { config, vary, values, out, overrides } => {
            overrides.into_overrides().and_then(|ov| sweep(&config, vary, &values, out.as_deref(), &ov))
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}
