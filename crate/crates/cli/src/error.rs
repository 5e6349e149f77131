use std::io;

use knot_slope::apoly::ApolyError;
use knot_slope::data::DataError;
use knot_slope::presentation::PresentationError;
use knot_slope::representation::RepError;
use thiserror::Error;

/// Failures that end a command before a verdict is reached. All of them
/// exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("`{0}` is neither a file nor a bundled knot name")]
    MissingInput(String),
    #[error("cannot read `{path}`: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Presentation { path: String, source: PresentationError },
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Apoly(#[from] ApolyError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("cannot write output: {0}")]
    Output(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
