//! Command-line front end: validate bialgebras, evolve convolution
//! semigroups, compute Guichardet constants and compound Poisson measures.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on input
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
pub mod report;
mod sources;

pub use report::Report;

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl From<convsemi::Error> for CliError {
    fn from(e: convsemi::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "convsemi",
    version,
    about = "Convolution semigroups on finite-dimensional C*-bialgebras"
)]
pub struct Cli {
    /// Tolerance applied to every residual.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for all randomly generated test data.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall-clock time in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the bialgebra axioms.
    Validate {
        /// `[fun:|cstar:]<zn:n|s3|d4|q8|file.json>`
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Exponentiate a generating functional and check the associated semigroup.
    Evolve {
        bialgebra: String,
        /// Functional file `{"dual_blocks": [...]}`.
        gamma: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0, 2.0])]
        times: Vec<f64>,
        /// Largest time of the continuity-bound grid.
        #[arg(long, default_value_t = 4.0)]
        grid_max: f64,
        /// Random functionals added to the dual-basis commutation check.
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// Guichardet constant of a conditionally positive-definite function.
    Guichardet {
        /// Built-in group name or semigroup file.
        group: String,
        /// Group-function file `{"group": ..., "values": [...]}`.
        psi: PathBuf,
    },
    /// Compound Poisson semigroup of a probability measure.
    Measure {
        /// Measure file `{"monoid": ..., "weights": [...]}`.
        measure: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        rate: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0, 2.0])]
        times: Vec<f64>,
    },
}

/// Parse `args` (including the program name), run, and write the report.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        let _ = writeln!(err, "error: --tol must be a finite non-negative number");
        return 2;
    }
    let start = Instant::now();
    match commands::execute(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
