//! Named manifolds, manifold descriptions and dispatch.

use series::TruncatedSeries;

use crate::closed::closed_kernel;
use crate::error::PeriodError;
use crate::modeval::{evaluate, Kernel, ProductKernel};
use crate::toric::{toric_ci_kernel, toric_kernel, BundleData, ToricData};
use crate::wps::{wps_ci_kernel, WpsCiData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldSpec {
    Toric(ToricData),
    ToricCI(ToricData, BundleData),
    WpsCI(WpsCiData),
    Product(Vec<ManifoldSpec>),
    Builtin(String),
}

/// The four-dimensional manifolds of the period and operator tables, in table order.
pub const TABLE_NAMES: [&str; 35] = [
    "P4", "Q4", "FI4_1", "FI4_2", "FI4_3", "FI4_4", "FI4_5", "FI4_6", "V4_2", "V4_4", "V4_6", "V4_8", "V4_10",
    "V4_12", "V4_14", "V4_16", "V4_18", "MW4_1", "MW4_2", "MW4_3", "MW4_4", "MW4_5", "MW4_6", "MW4_7", "MW4_8",
    "MW4_9", "MW4_10", "MW4_11", "MW4_12", "MW4_13", "MW4_14", "MW4_15", "MW4_16", "MW4_17", "MW4_18",
];

/// Every builtin name, including index-one examples and three-dimensional factors.
pub fn builtin_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = TABLE_NAMES.to_vec();
    v.extend([
        "V4_5", "Str1", "Str2", "Str3", "P1", "P2", "P3", "B3_1", "B3_2", "B3_3", "B3_4", "B3_5", "B3_7", "MM2_32",
        "MM2_35", "W3",
    ]);
    v
}

/// Fano index of a builtin.
pub fn fano_index(name: &str) -> Option<usize> {
    if !builtin_names().contains(&name) {
        return None;
    }
    Some(match name {
        "P4" => 5,
        "Q4" | "P3" => 4,
        "P2" => 3,
        n if n.starts_with("FI4_") || n == "V4_5" => 3,
        n if n.starts_with("Str") => 1,
        _ => 2,
    })
}

fn toric(rows: &[&[i64]]) -> ToricData {
    ToricData::new(rows.iter().map(|r| r.to_vec()).collect()).expect("builtin toric data")
}

fn projective_space(n: usize) -> ToricData {
    toric(&[&vec![1; n + 1]])
}

fn toric_ci(rows: &[&[i64]], bundle: &[&[i64]]) -> ManifoldSpec {
    let td = toric(rows);
    let bd = BundleData::new(bundle.iter().map(|r| r.to_vec()).collect(), td.rank()).expect("builtin bundle");
    ManifoldSpec::ToricCI(td, bd)
}

fn hypersurfaces(n: usize, degrees: &[i64]) -> ManifoldSpec {
    let td = projective_space(n);
    let bd = BundleData::new(degrees.iter().map(|&d| vec![d]).collect(), 1).unwrap();
    ManifoldSpec::ToricCI(td, bd)
}

fn wps(weights: &[u64], degrees: &[u64]) -> ManifoldSpec {
    ManifoldSpec::WpsCI(WpsCiData::new(weights.to_vec(), degrees.to_vec()).expect("builtin weights"))
}

fn with_p1(other: ManifoldSpec) -> ManifoldSpec {
    ManifoldSpec::Product(vec![ManifoldSpec::Toric(projective_space(1)), other])
}

/// The structural description (toric, complete intersection or product) of a builtin,
/// where one is available.
pub fn structural_spec(name: &str) -> Option<ManifoldSpec> {
    Some(match name {
        "P1" => ManifoldSpec::Toric(projective_space(1)),
        "P2" => ManifoldSpec::Toric(projective_space(2)),
        "P3" => ManifoldSpec::Toric(projective_space(3)),
        "P4" => ManifoldSpec::Toric(projective_space(4)),
        "Q4" => hypersurfaces(5, &[2]),
        "FI4_1" => wps(&[1, 1, 1, 1, 2, 3], &[6]),
        "FI4_2" => wps(&[1, 1, 1, 1, 1, 2], &[4]),
        "FI4_3" => hypersurfaces(5, &[3]),
        "FI4_4" => hypersurfaces(6, &[2, 2]),
        "FI4_6" => ManifoldSpec::Product(vec![structural_spec("P2")?, structural_spec("P2")?]),
        "V4_2" => wps(&[1, 1, 1, 1, 1, 3], &[6]),
        "V4_4" => hypersurfaces(5, &[4]),
        "V4_6" => hypersurfaces(6, &[2, 3]),
        "V4_8" => hypersurfaces(7, &[2, 2, 2]),
        "B3_1" => wps(&[1, 1, 1, 2, 3], &[6]),
        "B3_2" => wps(&[1, 1, 1, 1, 2], &[4]),
        "B3_3" => hypersurfaces(4, &[3]),
        "B3_4" => hypersurfaces(5, &[2, 2]),
        "MM2_32" | "W3" => toric_ci(&[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]], &[&[1, 1]]),
        "MM2_35" | "B3_7" => ManifoldSpec::Toric(toric(&[&[1, 1, 1, 0, -1], &[0, 0, 0, 1, 1]])),
        "MW4_1" => with_p1(structural_spec("B3_1")?),
        "MW4_2" => with_p1(structural_spec("B3_2")?),
        "MW4_3" => with_p1(structural_spec("B3_3")?),
        "MW4_4" => toric_ci(&[&[1, 1, 1, 0, 0, 0, 1], &[0, 0, 0, 1, 1, 1, 1]], &[&[2, 2]]),
        "MW4_5" => toric_ci(&[&[1, 1, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 1, 1, 1]], &[&[1, 2]]),
        "MW4_6" => with_p1(structural_spec("B3_4")?),
        "MW4_7" => toric_ci(&[&[1, 1, 1, 1, 0, 0, 0, 0], &[0, 0, 0, 0, 1, 1, 1, 1]], &[&[1, 1], &[1, 1]]),
        "MW4_8" => toric_ci(&[&[1, 1, 1, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 1, 1, 1, 1]], &[&[0, 2], &[1, 1]]),
        "MW4_10" => toric_ci(&[&[1, 1, 1, -1, 0, 0, 0], &[0, 0, 0, 1, 1, 1, 1]], &[&[0, 2]]),
        "MW4_12" => toric_ci(&[&[1, 1, 1, 1, -1, 0, 0], &[0, 0, 0, 0, 1, 1, 1]], &[&[1, 1]]),
        "MW4_13" => toric_ci(&[&[1, 1, 1, 1, 1, 0, -1], &[0, 0, 0, 0, 0, 1, 1]], &[&[2, 0]]),
        "MW4_14" => with_p1(structural_spec("P3")?),
        "MW4_15" => ManifoldSpec::Toric(toric(&[&[1, 1, 1, 1, 0, -2], &[0, 0, 0, 0, 1, 1]])),
        "MW4_16" => toric_ci(
            &[&[1, 1, 0, 0, 0, 0, 0, 0], &[0, 0, 1, 1, 1, 0, 0, 0], &[0, 0, 0, 0, 0, 1, 1, 1]],
            &[&[0, 1, 1]],
        ),
        "MW4_17" => ManifoldSpec::Toric(toric(&[
            &[1, 1, 0, 0, 0, 0, 0],
            &[0, 0, 1, 1, 1, 0, -1],
            &[0, 0, 0, 0, 0, 1, 1],
        ])),
        "MW4_18" => ManifoldSpec::Product((0..4).map(|_| ManifoldSpec::Toric(projective_space(1))).collect()),
        _ => return None,
    })
}

/// The evaluator tree for a manifold description.
pub fn kernel_for(spec: &ManifoldSpec, order: usize) -> Result<Box<dyn Kernel>, PeriodError> {
    match spec {
        ManifoldSpec::Toric(td) => toric_kernel(td, order),
        ManifoldSpec::ToricCI(td, bd) => toric_ci_kernel(td, bd, order),
        ManifoldSpec::WpsCI(wd) => Ok(wps_ci_kernel(wd, order)),
        ManifoldSpec::Product(fs) => {
            let ks = fs.iter().map(|f| kernel_for(f, order)).collect::<Result<Vec<_>, _>>()?;
            Ok(Box::new(ProductKernel::new(ks, order)))
        }
        ManifoldSpec::Builtin(name) => closed_kernel(name, order).ok_or_else(|| PeriodError::UnknownBuiltin(name.clone())),
    }
}

pub fn resolve(spec: &ManifoldSpec, order: usize) -> Result<TruncatedSeries, PeriodError> {
    evaluate(kernel_for(spec, order)?.as_ref())
}

/// The printed closed form of a builtin.
pub fn period_closed_form(name: &str, order: usize) -> Result<TruncatedSeries, PeriodError> {
    let k = closed_kernel(name, order).ok_or_else(|| PeriodError::UnknownBuiltin(name.to_string()))?;
    evaluate(k.as_ref())
}

/// The structural evaluation of a builtin, if it has a structural description.
pub fn period_structural(name: &str, order: usize) -> Result<Option<TruncatedSeries>, PeriodError> {
    structural_spec(name).map(|s| resolve(&s, order)).transpose()
}

/// Compare closed form and structural evaluation exactly; `Ok(false)` when the builtin
/// has no structural description.
pub fn cross_check(name: &str, order: usize) -> Result<bool, PeriodError> {
    let Some(s) = period_structural(name, order)? else { return Ok(false) };
    let c = period_closed_form(name, order)?;
    if let Some(d) = (0..=order).find(|&d| c.coeff(d) != s.coeff(d)) {
        return Err(PeriodError::CrossCheck(name.to_string(), d));
    }
    Ok(true)
}

/// Fold of the series product.
pub fn period_product(factors: &[TruncatedSeries]) -> TruncatedSeries {
    let order = factors.iter().map(|f| f.truncation_order()).min().unwrap_or(0);
    factors.iter().fold(TruncatedSeries::one(order), |acc, f| acc.mul(f))
}
