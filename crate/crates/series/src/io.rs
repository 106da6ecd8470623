use std::path::Path;

use exactnum::{format_rational, parse_rational};
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;
use crate::truncated::TruncatedSeries;

#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    truncation_order: String,
    coefficients: Vec<String>,
}

pub fn series_to_toml(s: &TruncatedSeries) -> String {
    let doc = SeriesDoc {
        truncation_order: s.truncation_order().to_string(),
        coefficients: s.coeffs().iter().map(format_rational).collect(),
    };
    toml::to_string(&doc).expect("series serializes")
}

pub fn series_from_toml(text: &str) -> Result<TruncatedSeries, SeriesError> {
    let doc: SeriesDoc = toml::from_str(text).map_err(|e| SeriesError::Format(e.to_string()))?;
    let field_err = |field: &str, message: String| SeriesError::Field { field: field.into(), message };
    let order: usize = doc
        .truncation_order
        .trim()
        .parse()
        .map_err(|_| field_err("truncation_order", format!("not a nonnegative integer: {:?}", doc.truncation_order)))?;
    if doc.coefficients.len() != order + 1 {
        return Err(field_err(
            "coefficients",
            format!("expected {} entries for truncation order {order}, found {}", order + 1, doc.coefficients.len()),
        ));
    }
    let coeffs = doc
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rational(c).map_err(|e| field_err("coefficients", format!("entry {i}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedSeries::new(coeffs))
}

pub fn read_series(path: &Path) -> Result<TruncatedSeries, SeriesError> {
    series_from_toml(&std::fs::read_to_string(path)?)
}

pub fn write_series(path: &Path, s: &TruncatedSeries) -> Result<(), SeriesError> {
    std::fs::write(path, series_to_toml(s))?;
    Ok(())
}
