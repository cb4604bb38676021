//! `zext`: zero tables, coefficient tables, empirical moment sums and the
//! regression self-test, from the command line.

mod args;
mod commands;
mod selftest;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit statuses.
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_ENVELOPE: u8 = 4;

/// A run that finished but failed a check.
#[derive(Debug)]
pub struct CheckFailure(pub String);

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use zext_core::Error as E;
    if err.downcast_ref::<CheckFailure>().is_some() {
        return EXIT_ENVELOPE;
    }
    match err.downcast_ref::<E>() {
        Some(
            E::AccuracyUnreachable { .. }
            | E::NonConvergence(_)
            | E::BracketFailure { .. }
            | E::UnresolvedCount { .. }
            | E::NearZeroDenominator { .. }
            | E::ZeroLeadingCoefficient,
        ) => EXIT_NUMERICAL,
        Some(E::Io(_) | E::Csv(_) | E::Json(_)) => 1,
        Some(_) => EXIT_USAGE,
        None if err.downcast_ref::<std::io::Error>().is_some() => 1,
        None => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
