//! Where series and operators come from: `builtin:NAME` or a file.

use std::path::Path;

use periods::{period_closed_form, resolve, spec_from_toml};
use qde::{operator_from_toml, DiffOperator};
use series::{series_from_toml, TruncatedSeries};

use crate::error::CliError;
use crate::golden::golden_operator;

fn builtin(s: &str) -> Option<&str> {
    s.strip_prefix("builtin:")
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// The quantum period G_X to truncation order `order`, from a builtin or a manifold file.
pub fn period(source: &str, order: usize) -> Result<TruncatedSeries, CliError> {
    match builtin(source) {
        Some(name) => Ok(period_closed_form(name, order)?),
        None => {
            let spec = spec_from_toml(&read(source)?).map_err(|e| CliError::Input(format!("{source}: {e}")))?;
            Ok(resolve(&spec, order)?)
        }
    }
}

/// The regularized series to reconstruct from: a series file is taken as given, a
/// builtin or manifold file is evaluated and regularized.
pub fn regularized_series(source: &str, order: usize) -> Result<TruncatedSeries, CliError> {
    if builtin(source).is_none() {
        let text = read(source)?;
        let is_series = text.parse::<toml::Table>().is_ok_and(|t| t.contains_key("coefficients"));
        if is_series {
            return series_from_toml(&text).map_err(|e| CliError::Input(format!("{source}: {e}")));
        }
    }
    Ok(period(source, order)?.regularize())
}

/// An operator file, or the golden operator of a builtin.
pub fn operator(source: &str) -> Result<DiffOperator, CliError> {
    match builtin(source) {
        Some(name) => golden_operator(name),
        None => operator_from_toml(&read(source)?).map_err(|e| CliError::Input(format!("{source}: {e}"))),
    }
}
