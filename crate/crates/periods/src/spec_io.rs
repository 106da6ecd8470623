//! Manifold description documents (TOML with a `kind` discriminator).

use toml::{Table, Value};

use crate::catalog::ManifoldSpec;
use crate::error::PeriodError;
use crate::toric::{BundleData, ToricData};
use crate::wps::WpsCiData;

fn err(msg: impl Into<String>) -> PeriodError {
    PeriodError::Spec(msg.into())
}

fn int(v: &Value, field: &str) -> Result<i64, PeriodError> {
    match v {
        Value::Integer(i) => Ok(*i),
        Value::String(s) => s.trim().parse().map_err(|_| err(format!("{field}: {s:?} is not an integer"))),
        _ => Err(err(format!("{field}: expected an integer"))),
    }
}

fn list(t: &Table, field: &str) -> Result<Vec<i64>, PeriodError> {
    let a = t.get(field).and_then(Value::as_array).ok_or_else(|| err(format!("missing list {field:?}")))?;
    a.iter().map(|v| int(v, field)).collect()
}

fn matrix(t: &Table, field: &str) -> Result<Vec<Vec<i64>>, PeriodError> {
    let a = t.get(field).and_then(Value::as_array).ok_or_else(|| err(format!("missing matrix {field:?}")))?;
    a.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| err(format!("{field}: rows must be lists")))?
                .iter()
                .map(|v| int(v, field))
                .collect()
        })
        .collect()
}

fn positive(xs: Vec<i64>, field: &str) -> Result<Vec<u64>, PeriodError> {
    xs.into_iter().map(|x| u64::try_from(x).map_err(|_| err(format!("{field}: entries must be positive")))).collect()
}

fn from_table(t: &Table) -> Result<ManifoldSpec, PeriodError> {
    let kind = t.get("kind").and_then(Value::as_str).ok_or_else(|| err("missing string field \"kind\""))?;
    match kind {
        "toric" => Ok(ManifoldSpec::Toric(ToricData::new(matrix(t, "weights")?)?)),
        "toric_ci" => {
            let td = ToricData::new(matrix(t, "weights")?)?;
            let bd = BundleData::new(matrix(t, "bundle")?, td.rank())?;
            Ok(ManifoldSpec::ToricCI(td, bd))
        }
        "wps_ci" => {
            let w = positive(list(t, "weights")?, "weights")?;
            let d = match t.get("degrees") {
                Some(_) => positive(list(t, "degrees")?, "degrees")?,
                None => Vec::new(),
            };
            Ok(ManifoldSpec::WpsCI(WpsCiData::new(w, d)?))
        }
        "product" => {
            let fs = t.get("factors").and_then(Value::as_array).ok_or_else(|| err("missing list \"factors\""))?;
            let fs = fs
                .iter()
                .map(|f| f.as_table().ok_or_else(|| err("factors must be tables")).and_then(from_table))
                .collect::<Result<Vec<_>, _>>()?;
            if fs.is_empty() {
                return Err(err("product needs at least one factor"));
            }
            Ok(ManifoldSpec::Product(fs))
        }
        "builtin" => {
            let name = t.get("name").and_then(Value::as_str).ok_or_else(|| err("missing string field \"name\""))?;
            if crate::catalog::fano_index(name).is_none() {
                return Err(PeriodError::UnknownBuiltin(name.to_string()));
            }
            Ok(ManifoldSpec::Builtin(name.to_string()))
        }
        other => Err(err(format!("unknown kind {other:?}"))),
    }
}

pub fn spec_from_toml(text: &str) -> Result<ManifoldSpec, PeriodError> {
    let t: Table = text.parse().map_err(|e: toml::de::Error| err(e.to_string()))?;
    from_table(&t)
}
