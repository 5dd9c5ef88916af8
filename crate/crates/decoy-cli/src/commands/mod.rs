pub mod coeffs;
pub mod estimate;
pub mod optimize;
pub mod reproduce;
pub mod simulate;

use std::path::Path;

use crate::output::write_atomic;
use crate::CliError;

/// Sends a JSON document to the output path or stdout.
pub fn emit_json(value: &serde_json::Value, output: Option<&Path>) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    match output {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
