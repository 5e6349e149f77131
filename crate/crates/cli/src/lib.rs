//! Command-line pipeline: parse a presentation, sample Riley
//! representations, compute slopes and A-polynomials, and cross-check the
//! two.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod report;

use std::io::Write;

pub use args::{Cli, Command, Format, GlobalOpts, PresentationCommand};
pub use error::CliError;

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Slope { file, m } => commands::cmd_slope(file, m, opts, out),
        Command::Scan { file } => commands::cmd_scan(file, opts, out),
        Command::Apoly { file } => commands::cmd_apoly(file, opts, out),
        Command::Verify { file, poly } => commands::cmd_verify(file, poly.as_deref(), opts, out),
        Command::Presentation { action: PresentationCommand::Check { file } } => {
            commands::cmd_presentation_check(file, opts, out)
        }
    }
}
