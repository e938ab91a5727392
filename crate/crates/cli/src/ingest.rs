//! Dataset ingestion: one numeric value per row, optional header row
//! (auto-detected when the first row does not parse), row-numbered errors.
//! Censoring columns are rejected; every bundled analysis assumes
//! uncensored observations.

use std::path::Path;

use t2gwg::Dataset;

use crate::CliError;

pub fn ingest_csv(path: &Path) -> Result<Dataset, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    ingest_str(&text, &path.display().to_string())
}

pub fn ingest_str(text: &str, origin: &str) -> Result<Dataset, CliError> {
    let mut lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).collect();
    while matches!(lines.last(), Some((_, l)) if l.is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(CliError::Ingest(format!("{origin}: file is empty")));
    }

    let mut values = Vec::with_capacity(lines.len());
    for (idx, (line_no, line)) in lines.iter().enumerate() {
        if line.is_empty() {
            return Err(CliError::Ingest(format!("{origin}: empty row at line {line_no}")));
        }
        if line.contains(',') || line.contains(';') || line.split_whitespace().count() > 1 {
            return Err(CliError::Ingest(format!(
                "{origin}: line {line_no} has multiple columns; censoring columns are not supported, \
                 provide one uncensored value per row"
            )));
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(v) => {
                return Err(CliError::Ingest(format!(
                    "{origin}: non-finite value {v} at line {line_no}"
                )))
            }
            Err(_) if idx == 0 => continue, // header row
            Err(_) => {
                return Err(CliError::Ingest(format!(
                    "{origin}: cannot parse `{line}` as a number at line {line_no}"
                )))
            }
        }
    }

    Dataset::new(values).map_err(|e| CliError::Ingest(format!("{origin}: {e}")))
}
