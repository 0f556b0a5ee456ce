//! `eeq`: inspect relations, check morphism properties and replay constructions at a finite scope.

mod args;
mod construct;
mod output;
mod show;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eeq_core::category::{CategoryError, Scope};
use eeq_core::constructions::ConstructionError;
use thiserror::Error;

use crate::args::{parse_scope, Context};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "eeq",
    version,
    about = "Equivalence relations and their morphisms at finite scope"
)]
struct Cli {
    /// Stage and universe bound, `s,n`.
    #[arg(long, global = true, default_value = "64,64", value_parser = parse_scope)]
    scope: (u64, usize),
    /// Codomain bound for checks whose images leave `[0, n)`; defaults to `n`.
    #[arg(long, global = true)]
    codomain: Option<usize>,
    /// Seed for generated instances and candidate families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest size of generated terms.
    #[arg(long, global = true, default_value_t = 7)]
    cap: usize,
    /// Candidate family size for uniqueness checks.
    #[arg(long, global = true, default_value_t = 50)]
    candidates: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Directory for traces and diagnostics files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Relation definitions (`rel NAME = ...` lines).
    #[arg(long, global = true)]
    rels: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the classes of a relation on `[0, n)` at stage `s`.
    Show {
        /// Name from `--rels`, or an inline definition such as `idn3`.
        relation: String,
    },
    /// Check a property at scope. Exit 0 ok, 1 counterexample, 2 unknown.
    Verify {
        #[arg(value_enum)]
        kind: verify::Kind,
        /// Operands as `key=value`, e.g. `f=id R=idn4 S=idn2`.
        args: Vec<String>,
    },
    /// Run a construction and write its trace and diagnostics.
    Construct {
        #[arg(value_enum)]
        which: construct::Which,
        args: Vec<String>,
    },
    /// Replay a stage trace and print the approximant after each stage.
    TraceReplay {
        trace: PathBuf,
        /// Read merges as a ceer or isolations as a coceer; `auto` picks by content.
        #[arg(long = "as", value_enum, default_value_t = ReplayKind::Auto)]
        kind: ReplayKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReplayKind {
    Auto,
    Ceer,
    Coceer,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Malformed input files and surrogate invariant violations.
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Io(_) => 74,
        }
    }
}

impl From<CategoryError> for CliError {
    fn from(e: CategoryError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        if e.is_surrogate_violation() {
            CliError::Data(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<eeq_core::rel::RelError> for CliError {
    fn from(e: eeq_core::rel::RelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<eeq_core::funlang::EvalError> for CliError {
    fn from(e: eeq_core::funlang::EvalError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Printed text plus the exit status it implies.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let (stage, n) = cli.scope;
    let scope = Scope::new(stage, n).with_codomain(cli.codomain.unwrap_or(n).max(1));
    let ctx = Context::new(
        scope,
        cli.seed,
        cli.cap,
        cli.candidates,
        cli.format,
        cli.out,
        cli.rels.as_deref(),
    )?;
    match cli.command {
        Command::Show { relation } => show::show(&ctx, &relation),
        Command::Verify { kind, args } => verify::verify(&ctx, kind, &args),
        Command::Construct { which, args } => construct::construct(&ctx, which, &args),
        Command::TraceReplay { trace, kind } => show::trace_replay(&ctx, &trace, kind),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).is_err() {
                return ExitCode::from(74);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("eeq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
