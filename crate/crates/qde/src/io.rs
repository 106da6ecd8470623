use std::path::Path;

use exactnum::{format_rational, parse_rational};
use serde::Deserialize;

use crate::error::QdeError;
use crate::operator::DiffOperator;

#[derive(Deserialize)]
#[allow(dead_code)]
struct OperatorDoc {
    #[serde(default)]
    provenance: Option<String>,
    order: String,
    degree: String,
    coefficients: Vec<Vec<String>>,
}

/// Operator file: `order`, `degree` and the (N+1)×(r+1) matrix, row k ascending in l.
pub fn operator_to_toml(op: &DiffOperator) -> String {
    let mut s = format!("order = \"{}\"\ndegree = \"{}\"\ncoefficients = [\n", op.order(), op.degree());
    for row in op.rows() {
        let cells: Vec<String> = row.iter().map(|c| format!("\"{}\"", format_rational(c))).collect();
        s.push_str(&format!("  [{}],\n", cells.join(", ")));
    }
    s.push_str("]\n");
    s
}

pub fn operator_from_toml(text: &str) -> Result<DiffOperator, QdeError> {
    let doc: OperatorDoc = toml::from_str(text).map_err(|e| QdeError::Format(e.to_string()))?;
    let field = |field: &str, message: String| QdeError::Field { field: field.into(), message };
    let num = |name: &str, v: &str| -> Result<usize, QdeError> {
        v.trim().parse().map_err(|_| field(name, format!("not a nonnegative integer: {v:?}")))
    };
    let order = num("order", &doc.order)?;
    let degree = num("degree", &doc.degree)?;
    if doc.coefficients.len() != order + 1 {
        return Err(field("coefficients", format!("expected {} rows, found {}", order + 1, doc.coefficients.len())));
    }
    let rows = doc
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, row)| {
            if row.len() != degree + 1 {
                return Err(field("coefficients", format!("row {k}: expected {} entries, found {}", degree + 1, row.len())));
            }
            row.iter()
                .map(|c| parse_rational(c).map_err(|e| field("coefficients", format!("row {k}: {e}"))))
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    DiffOperator::new(rows)
}

pub fn read_operator(path: &Path) -> Result<DiffOperator, QdeError> {
    operator_from_toml(&std::fs::read_to_string(path)?)
}

pub fn write_operator(path: &Path, op: &DiffOperator) -> Result<(), QdeError> {
    std::fs::write(path, operator_to_toml(op))?;
    Ok(())
}
