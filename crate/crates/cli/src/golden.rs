//! The golden corpus, embedded at build time.

use std::sync::OnceLock;

use exactnum::{parse_rational, BigInt, BigRational};
use qde::{operator_from_toml, DiffOperator};
use serde::Deserialize;

use crate::error::CliError;

macro_rules! operator_files {
    ($($name:literal),* $(,)?) => {
        [$(($name, include_str!(concat!("../golden/operators/", $name, ".toml")))),*]
    };
}

const OPERATORS: [(&str, &str); 35] = operator_files!(
    "P4", "Q4", "FI4_1", "FI4_2", "FI4_3", "FI4_4", "FI4_5", "FI4_6", "V4_2", "V4_4", "V4_6", "V4_8", "V4_10",
    "V4_12", "V4_14", "V4_16", "V4_18", "MW4_1", "MW4_2", "MW4_3", "MW4_4", "MW4_5", "MW4_6", "MW4_7", "MW4_8",
    "MW4_9", "MW4_10", "MW4_11", "MW4_12", "MW4_13", "MW4_14", "MW4_15", "MW4_16", "MW4_17", "MW4_18",
);

const PERIODS: &str = include_str!("../golden/periods.toml");
const MONODROMY: &str = include_str!("../golden/monodromy.toml");
const TORIC: &str = include_str!("../golden/toric_checks.toml");

/// Printed α_d at the listed degrees.
#[derive(Clone, Debug)]
pub struct PeriodRecord {
    pub name: String,
    pub provenance: String,
    pub alphas: Vec<(usize, BigRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointRecord {
    /// "origin", "finite" or "infinity".
    pub kind: String,
    /// Integer coefficients of the factor, ascending (finite points only).
    pub factor: Vec<BigInt>,
    /// (eigenvalue, size), sorted.
    pub blocks: Vec<(BigRational, usize)>,
}

/// Nontrivial local monodromies and the defect.
#[derive(Clone, Debug)]
pub struct MonodromyRecord {
    pub name: String,
    pub provenance: String,
    pub order: usize,
    pub defect: i64,
    pub points: Vec<PointRecord>,
}

#[derive(Deserialize)]
struct PeriodDoc {
    record: Vec<RawPeriod>,
}

#[derive(Deserialize)]
struct RawPeriod {
    name: String,
    provenance: String,
    degrees: Vec<String>,
    alphas: Vec<String>,
}

#[derive(Deserialize)]
struct MonodromyDoc {
    record: Vec<RawMonodromy>,
}

#[derive(Deserialize)]
struct RawMonodromy {
    name: String,
    provenance: String,
    order: String,
    defect: String,
    point: Vec<RawPoint>,
}

#[derive(Deserialize)]
struct RawPoint {
    kind: String,
    factor: Option<Vec<String>>,
    blocks: Vec<[String; 2]>,
}

fn corrupt(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("golden {what}: {e}"))
}

fn num<T: std::str::FromStr>(what: &str, s: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| corrupt(what, format!("bad integer {s:?}")))
}

fn rational(what: &str, s: &str) -> Result<BigRational, CliError> {
    parse_rational(s).map_err(|e| corrupt(what, e))
}

fn parse_periods(text: &str) -> Result<Vec<PeriodRecord>, CliError> {
    let doc: PeriodDoc = toml::from_str(text).map_err(|e| corrupt("periods", e))?;
    doc.record
        .into_iter()
        .map(|r| {
            if r.degrees.len() != r.alphas.len() {
                return Err(corrupt("periods", format!("{}: degrees and alphas differ in length", r.name)));
            }
            let alphas = r
                .degrees
                .iter()
                .zip(&r.alphas)
                .map(|(d, a)| Ok((num("periods", d)?, rational("periods", a)?)))
                .collect::<Result<_, CliError>>()?;
            Ok(PeriodRecord { name: r.name, provenance: r.provenance, alphas })
        })
        .collect()
}

fn parse_monodromy(text: &str) -> Result<Vec<MonodromyRecord>, CliError> {
    let doc: MonodromyDoc = toml::from_str(text).map_err(|e| corrupt("monodromy", e))?;
    doc.record
        .into_iter()
        .map(|r| {
            let points = r
                .point
                .iter()
                .map(|p| {
                    let factor = p
                        .factor
                        .iter()
                        .flatten()
                        .map(|c| num("monodromy", c))
                        .collect::<Result<Vec<BigInt>, _>>()?;
                    let mut blocks = p
                        .blocks
                        .iter()
                        .map(|[e, k]| Ok((rational("monodromy", e)?, num("monodromy", k)?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    blocks.sort();
                    Ok(PointRecord { kind: p.kind.clone(), factor, blocks })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let mut points = points;
            points.sort();
            Ok(MonodromyRecord {
                name: r.name,
                provenance: r.provenance,
                order: num("monodromy", &r.order)?,
                defect: num("monodromy", &r.defect)?,
                points,
            })
        })
        .collect()
}

pub fn period_records() -> &'static [PeriodRecord] {
    static CELL: OnceLock<Vec<PeriodRecord>> = OnceLock::new();
    CELL.get_or_init(|| parse_periods(PERIODS).expect("embedded period table"))
}

/// α_8, α_9 for the toric fourfolds distinguished only at those degrees.
pub fn toric_records() -> &'static [PeriodRecord] {
    static CELL: OnceLock<Vec<PeriodRecord>> = OnceLock::new();
    CELL.get_or_init(|| parse_periods(TORIC).expect("embedded toric table"))
}

pub fn monodromy_records() -> &'static [MonodromyRecord] {
    static CELL: OnceLock<Vec<MonodromyRecord>> = OnceLock::new();
    CELL.get_or_init(|| parse_monodromy(MONODROMY).expect("embedded monodromy table"))
}

pub fn operator_names() -> impl Iterator<Item = &'static str> {
    OPERATORS.iter().map(|(n, _)| *n)
}

pub fn golden_operator(name: &str) -> Result<DiffOperator, CliError> {
    let (_, text) = OPERATORS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CliError::Input(format!("no golden operator for {name:?}")))?;
    operator_from_toml(text).map_err(|e| corrupt("operator", e))
}
