//! CSV input for time series: one row per time step, one field per
//! coordinate, an optional header row, exact rational fields.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::rational::parse_rational;
use crate::signature::{Interpretation, TimeSeries};

/// Parses CSV text into a series. When `dim` is given every row must have
/// that many fields; otherwise the first data row fixes it.
///
/// A first row whose fields are all non-numeric is taken as a header.
pub fn parse_series(text: &str, dim: Option<usize>, interpretation: Interpretation) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut width = dim;
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(line, 1, e.to_string())
        })?;
        let line = record.position().map_or(k + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if rows.is_empty() && k == 0 && record.iter().all(|f| parse_rational(f).is_err()) {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::parse(
                line,
                record.len().min(expected) + 1,
                format!("expected {expected} fields, found {}", record.len()),
            ));
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| parse_rational(field).map_err(|m| Error::parse(line, col + 1, m)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let dim = width.ok_or_else(|| Error::invalid("empty series needs an explicit dimension"))?;
    TimeSeries::new(dim, rows, interpretation)
}
