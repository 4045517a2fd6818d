//! `hopspan` command-line tool.
//!
//! Exit codes: 0 success (and verified when asked), 1 verification failure,
//! 2 usage error, 3 construction error.

mod commands;
mod config;
mod experiment;
mod structure;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Construction(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Construction(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Construction(m) => write!(f, "construction failed: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<hopspan::Error> for CliError {
    fn from(e: hopspan::Error) -> Self {
        match e {
            hopspan::Error::Construction(m) => CliError::Construction(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "hopspan", version, about = "Hopsets, missing spanners, preservers and spanners with verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random or structured graph
    Gen(commands::GenArgs),
    /// Build a hopset
    Hopset(commands::HopsetArgs),
    /// Build a shortcut set (reachability hopset)
    Shortcut(commands::ShortcutArgs),
    /// Build a bounded-missing spanner from a hopset hierarchy
    MissingSpanner(commands::MissingArgs),
    /// Build a distance preserver for demand pairs
    Preserver(commands::PreserverArgs),
    /// Build a reachability preserver for demand pairs
    ReachPreserver(commands::ReachArgs),
    /// Build an emulator or near-additive spanner
    Spanner(commands::SpannerArgs),
    /// Build a sourcewise spanner
    Sourcewise(commands::SourcewiseArgs),
    /// Build a slack spanner
    Slack(commands::SlackArgs),
    /// Check a structure file against its claim
    Verify(commands::VerifyArgs),
    /// Run a parameter sweep and write CSV and plot data
    Experiment(experiment::ExperimentArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Hopset(a) => commands::hopset(a),
        Command::Shortcut(a) => commands::shortcut(a),
        Command::MissingSpanner(a) => commands::missing_spanner(a),
        Command::Preserver(a) => commands::preserver(a),
        Command::ReachPreserver(a) => commands::reach_preserver(a),
        Command::Spanner(a) => commands::spanner(a),
        Command::Sourcewise(a) => commands::sourcewise(a),
        Command::Slack(a) => commands::slack(a),
        Command::Verify(a) => commands::verify(a),
        Command::Experiment(a) => experiment::experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hopspan: {e}");
            ExitCode::from(e.code())
        }
    }
}
