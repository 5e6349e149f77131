use std::path::Path;
use std::sync::Arc;

use knot_slope::apoly::{parse_bilaurent, BiLaurent};
use knot_slope::data;
use knot_slope::presentation::{parse_presentation, KnotPresentation};

use crate::error::CliError;

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_string(), source })
}

/// Loads a presentation from a file, falling back to the bundled knots by
/// name when no such file exists.
pub fn load_presentation(arg: &str) -> Result<Arc<KnotPresentation>, CliError> {
    if Path::new(arg).exists() {
        let text = read(arg)?;
        let pres =
            parse_presentation(&text).map_err(|source| CliError::Presentation { path: arg.to_string(), source })?;
        return Ok(Arc::new(pres));
    }
    if data::text(arg).is_some() {
        return Ok(data::load(arg)?);
    }
    Err(CliError::MissingInput(arg.to_string()))
}

/// A polynomial from a file or given inline.
pub fn load_polynomial(arg: &str) -> Result<BiLaurent, CliError> {
    let text = if Path::new(arg).is_file() { read(arg)? } else { arg.to_string() };
    Ok(parse_bilaurent(text.trim())?)
}
