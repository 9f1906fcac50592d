//! `pbq`: batch front end for classification tables, matrix emission,
//! invariant verification and expression evaluation.

mod commands;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "pbq", version, about = "Root-of-unity representations of U_q[osp(1/2)]")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Decimal digits for approximate arithmetic and printed decimals.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(16..))]
    pub precision: u32,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simple vacuum modules with dimension, Casimir and unitarity verdict.
    Classify {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
        /// Extra weights: comma list and/or start:step:end (default: window plus halves).
        #[arg(long)]
        p_grid: Option<String>,
    },
    /// Unitarizable modules of dimension at least 2, against the published list.
    Unitary {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        p_grid: Option<String>,
    },
    /// Generator matrices of W(|p;0>, |p;L>).
    Matrices {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
        /// Exact fraction ("3/2") or decimal ("0.37", approximate mode).
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long = "L")]
        top: u64,
        /// Orthonormal basis of a unitarizable module.
        #[arg(long)]
        orthonormal: bool,
    },
    /// Full invariant suite; exit status 1 on any failure.
    Verify {
        #[arg(long, requires = "k", conflicts_with = "max_k")]
        m: Option<i64>,
        #[arg(long, requires = "m")]
        k: Option<i64>,
        /// Every admissible algebra with k up to this bound (default 9).
        #[arg(long)]
        max_k: Option<i64>,
        /// Run the per-algebra jobs on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Normal-order an expression and evaluate it on W(|p;0>, |p;L>).
    Eval {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long = "L")]
        top: u64,
        #[arg(long)]
        expr: String,
    },
    /// Reduce (m, k) to an admissible pair and print the generator map.
    Canon {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        k: i64,
    },
}

/// Failure classes, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or inputs outside the supported domain: exit 2.
    Usage(String),
    /// Computation or I/O failure: exit 1.
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Internal(e.into())
    }
}

pub fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Rendered output and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
