//! `su2w` command-line front end: state generation, witness evaluation,
//! squeezing sweeps, critical-squeezing tables, measurement simulation and
//! oracle self-checks.
//!
//! Exit codes: 0 success, 1 self-check failure, 2 usage or parameter error.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub mod check;
pub mod commands;
pub mod grid;

#[derive(Debug, Parser)]
#[command(
    name = "su2w",
    version,
    about = "Two-mode entanglement witnesses for SU(2) minimum-uncertainty states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the minimum-uncertainty state |Ψ>_{N,m} as a state file.
    State {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the witness report for a state file or a generated state.
    Criteria {
        #[arg(long = "in", conflicts_with_all = ["n", "m", "lambda"])]
        input: Option<PathBuf>,
        #[arg(long, requires_all = ["m", "lambda"])]
        n: Option<usize>,
        #[arg(long, requires_all = ["n", "lambda"])]
        m: Option<usize>,
        #[arg(long, requires_all = ["n", "m"])]
        lambda: Option<f64>,
    },
    /// Q, R and moments over a grid of squeezing values.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Truncation indices, e.g. `1,2,3,5` or `0:10`.
        #[arg(long)]
        m_list: String,
        /// `start:stop:count` or a comma-separated list.
        #[arg(long)]
        lambda_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical squeezing λ_c per total photon number.
    Lambdac {
        /// Photon numbers, e.g. `5,10,20` or `4:40:2`.
        #[arg(long)]
        n_list: String,
        #[arg(long, value_enum)]
        m_rule: MRule,
        /// Truncation index for `--m-rule explicit`.
        #[arg(long, required_if_eq("m_rule", "explicit"))]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate photon counting at φ = 0 and φ = π/2 and estimate Q and R.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Estimate JSON; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional CSV of the raw counts.
        #[arg(long)]
        samples_out: Option<PathBuf>,
    },
    /// Run the oracle-equivalence suites.
    Check,
}

/// Choice of truncation index per photon number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MRule {
    /// m = ⌊N/2⌋ + 2
    #[value(name = "half+2")]
    HalfPlus2,
    /// m = ⌊3N/4⌋ + 1
    #[value(name = "3quarters+1")]
    ThreeQuartersPlus1,
    #[value(name = "N-2")]
    NMinus2,
    #[value(name = "N-1")]
    NMinus1,
    Explicit,
}

impl MRule {
    /// None when the rule has no valid index for this N.
    pub fn pick(self, n: usize, explicit: Option<usize>) -> Option<usize> {
        match self {
            MRule::HalfPlus2 => Some(n / 2 + 2),
            MRule::ThreeQuartersPlus1 => Some(3 * n / 4 + 1),
            MRule::NMinus2 => n.checked_sub(2),
            MRule::NMinus1 => n.checked_sub(1),
            MRule::Explicit => explicit,
        }
    }
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn check(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<su2w_core::Error> for CliError {
    fn from(e: su2w_core::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

/// Writes to `path`, or to stdout when `None`.
pub(crate) fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Worker pool honouring `SU2W_THREADS` (0 or unset = one per core).
pub(crate) fn pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var("SU2W_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::usage(format!("SU2W_THREADS must be an integer, got '{v}'")))?,
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot build thread pool: {e}")))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::State { n, m, lambda, out } => commands::state(n, m, lambda, out.as_deref()),
        Command::Criteria {
            input,
            n,
            m,
            lambda,
        } => commands::criteria(
            input.as_deref(),
            n.zip(m).zip(lambda).map(|((n, m), l)| (n, m, l)),
        ),
        Command::Sweep {
            n,
            m_list,
            lambda_grid,
            out,
        } => commands::sweep(n, &m_list, &lambda_grid, out.as_deref()),
        Command::Lambdac {
            n_list,
            m_rule,
            m,
            out,
        } => commands::lambdac(&n_list, m_rule, m, out.as_deref()),
        Command::Measure {
            input,
            samples,
            seed,
            out,
            samples_out,
        } => commands::measure(
            &input,
            samples,
            seed,
            out.as_deref(),
            samples_out.as_deref(),
        ),
        Command::Check => check::run_all(),
    }
}
