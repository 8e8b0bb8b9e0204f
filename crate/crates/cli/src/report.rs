use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// Render rows as CSV (with header) or as a JSON array.
pub fn render<T: Serialize>(rows: &[T], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(CliError::internal)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_rows(rows),
    }
}

pub fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(CliError::internal)?;
    }
    let bytes = w.into_inner().map_err(CliError::internal)?;
    String::from_utf8(bytes).map_err(CliError::internal)
}

/// A single object: one CSV row or a bare JSON object.
pub fn render_one<T: Serialize>(row: &T, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(row).map_err(CliError::internal)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_rows(std::slice::from_ref(row)),
    }
}
