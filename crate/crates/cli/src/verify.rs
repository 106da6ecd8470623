//! Recompute golden records from scratch and compare exactly.

use std::fmt;
use std::path::Path;

use exactnum::{format_rational, BigInt};
use monodromy::{ramification, PointKind, RamificationReport};
use periods::{period_closed_form, period_toric, ToricData, TABLE_NAMES};
use qde::{equal_up_to_scalar, reconstruct, DiffOperator, Reconstruction, DEFAULT_MARGIN};
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::CliError;
use crate::golden::{golden_operator, monodromy_records, period_records, toric_records, PeriodRecord, PointRecord};

/// Series length used to reconstruct operators.
pub const OPERATOR_TERMS: usize = 520;
pub const MAX_ORDER: usize = 8;
pub const MAX_DEGREE: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Periods,
    Operators,
    Monodromy,
    Toric,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Periods, Suite::Operators, Suite::Monodromy, Suite::Toric];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Periods => "periods",
            Suite::Operators => "operators",
            Suite::Monodromy => "monodromy",
            Suite::Toric => "toric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<Outcome>,
}

impl VerifyReport {
    /// (pass, fail, skipped)
    pub fn tally(&self) -> (usize, usize, usize) {
        let count = |f: fn(&Status) -> bool| self.outcomes.iter().filter(|o| f(&o.status)).count();
        (
            count(|s| *s == Status::Pass),
            count(|s| matches!(s, Status::Fail(_))),
            count(|s| matches!(s, Status::Skip(_))),
        )
    }

    pub fn passed(&self) -> bool {
        self.tally().1 == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.status {
                Status::Pass => writeln!(f, "PASS {} {}", o.suite.name(), o.name)?,
                Status::Fail(why) => writeln!(f, "FAIL {} {}: {why}", o.suite.name(), o.name)?,
                Status::Skip(why) => writeln!(f, "SKIP {} {}: {why}", o.suite.name(), o.name)?,
            }
        }
        let (p, x, s) = self.tally();
        write!(f, "tally: pass={p} fail={x} skipped={s} total={}", self.outcomes.len())
    }
}

/// Names in record order, for resolving `A..B` ranges.
fn ordering() -> Vec<String> {
    TABLE_NAMES.iter().map(|s| s.to_string()).chain(toric_records().iter().map(|r| r.name.clone())).collect()
}

/// Comma-separated names and inclusive ranges `A..B`; an empty string selects nothing.
pub fn parse_subset(text: &str) -> Result<Vec<String>, CliError> {
    let order = ordering();
    let pos = |n: &str| order.iter().position(|x| x == n).ok_or_else(|| CliError::Input(format!("unknown record name {n:?}")));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let (i, j) = (pos(a.trim())?, pos(b.trim())?);
                if i > j {
                    return Err(CliError::Input(format!("empty range {item:?}")));
                }
                out.extend(order[i..=j].iter().cloned());
            }
            None => {
                pos(item)?;
                out.push(item.to_string());
            }
        }
    }
    Ok(out)
}

fn selected(subset: Option<&[String]>, name: &str) -> bool {
    subset.is_none_or(|s| s.iter().any(|n| n == name))
}

fn compare_alphas(rec: &PeriodRecord, regularized: &series::TruncatedSeries) -> Status {
    for (d, want) in &rec.alphas {
        let got = regularized.coeff(*d);
        if got != want {
            return Status::Fail(format!("alpha_{d} = {}, expected {}", format_rational(got), format_rational(want)));
        }
    }
    Status::Pass
}

fn check_period(rec: &PeriodRecord) -> Status {
    let order = rec.alphas.iter().map(|a| a.0).max().unwrap_or(0);
    match period_closed_form(&rec.name, order) {
        Ok(g) => compare_alphas(rec, &g.regularize()),
        Err(e) => Status::Fail(e.to_string()),
    }
}

/// Reconstruct the operator of a builtin from its regularized period.
pub fn reconstruct_builtin(name: &str, terms: usize) -> Result<DiffOperator, CliError> {
    let g = period_closed_form(name, terms)?.regularize();
    match reconstruct(&g, MAX_ORDER, MAX_DEGREE, DEFAULT_MARGIN)? {
        Reconstruction::Found(op) => Ok(op),
        Reconstruction::NoAnnihilator => Err(CliError::Unsupported(format!("{name}: no annihilator within limits"))),
    }
}

fn check_operator(name: &str) -> Status {
    let run = || -> Result<Status, CliError> {
        let golden = golden_operator(name)?;
        let op = reconstruct_builtin(name, OPERATOR_TERMS)?;
        Ok(if equal_up_to_scalar(&op, &golden) {
            Status::Pass
        } else {
            Status::Fail(format!("reconstructed order {} degree {}, expected order {} degree {}", op.order(), op.degree(), golden.order(), golden.degree()))
        })
    };
    run().unwrap_or_else(|e| Status::Fail(e.to_string()))
}

/// Nontrivial points of a report in the golden record layout, sorted.
pub fn point_records(report: &RamificationReport) -> Vec<PointRecord> {
    let mut out: Vec<PointRecord> = report
        .per_point
        .iter()
        .filter(|p| !p.monodromy.is_trivial())
        .map(|p| {
            let pt = &p.monodromy.point;
            let kind = match pt.kind {
                PointKind::Origin => "origin",
                PointKind::Finite => "finite",
                PointKind::Infinity => "infinity",
            };
            let factor: Vec<BigInt> = pt.factor.as_ref().map(|f| f.to_integers()).unwrap_or_default();
            let mut blocks = p.monodromy.blocks.clone();
            blocks.sort();
            PointRecord { kind: kind.to_string(), factor, blocks }
        })
        .collect();
    out.sort();
    out
}

fn describe(p: &PointRecord) -> String {
    let blocks: Vec<String> = p.blocks.iter().map(|(e, k)| format!("({}, {k})", format_rational(e))).collect();
    let factor: Vec<String> = p.factor.iter().map(BigInt::to_string).collect();
    format!("{} [{}] {}", p.kind, factor.join(" "), blocks.join(" "))
}

/// Compare a computed report against the golden record of `name`.
pub fn compare_monodromy(name: &str, report: &RamificationReport) -> Status {
    let Some(rec) = monodromy_records().iter().find(|r| r.name == name) else {
        return Status::Fail(format!("no golden monodromy record for {name}"));
    };
    if report.rank != rec.order {
        return Status::Fail(format!("order {} expected {}", report.rank, rec.order));
    }
    let got = point_records(report);
    if got != rec.points {
        let extra: Vec<String> = got.iter().filter(|p| !rec.points.contains(p)).map(describe).collect();
        let missing: Vec<String> = rec.points.iter().filter(|p| !got.contains(p)).map(describe).collect();
        return Status::Fail(format!("computed but not listed: {extra:?}; listed but not computed: {missing:?}"));
    }
    if report.defect != rec.defect {
        return Status::Fail(format!("defect {} expected {}", report.defect, rec.defect));
    }
    if report.defect < 0 {
        return Status::Fail(format!("ANOMALY: negative defect {}", report.defect));
    }
    Status::Pass
}

fn check_monodromy(name: &str) -> Status {
    match golden_operator(name).and_then(|op| ramification(&op).map_err(CliError::from)) {
        Ok(report) => compare_monodromy(name, &report),
        Err(e) => Status::Fail(e.to_string()),
    }
}

#[derive(Deserialize)]
struct WeightDoc {
    manifold: Vec<WeightEntry>,
}

#[derive(Deserialize)]
struct WeightEntry {
    name: String,
    weights: Vec<Vec<i64>>,
}

/// A weight file lists `[[manifold]]` tables with `name` and integer matrix `weights`.
pub fn read_weights(path: &Path) -> Result<Vec<(String, ToricData)>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let doc: WeightDoc = toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    doc.manifold
        .into_iter()
        .map(|m| {
            let td = ToricData::new(m.weights).map_err(|e| CliError::Input(format!("{}: {}: {e}", path.display(), m.name)))?;
            Ok((m.name, td))
        })
        .collect()
}

fn check_toric(rec: &PeriodRecord, weights: Option<&[(String, ToricData)]>) -> Status {
    let Some(weights) = weights else { return Status::Skip("no weight file supplied".into()) };
    let Some((_, td)) = weights.iter().find(|(n, _)| *n == rec.name) else {
        return Status::Skip("not in the weight file".into());
    };
    let order = rec.alphas.iter().map(|a| a.0).max().unwrap_or(0);
    match period_toric(td, order) {
        Ok(g) => compare_alphas(rec, &g.regularize()),
        Err(e) => Status::Fail(e.to_string()),
    }
}

/// Run the given suites over the selected records; `subset = None` selects everything.
pub fn verify(suites: &[Suite], subset: Option<&[String]>, weights: Option<&Path>) -> Result<VerifyReport, CliError> {
    let weights = weights.map(read_weights).transpose()?;
    let mut jobs: Vec<(Suite, String)> = Vec::new();
    for &suite in suites {
        let names: Vec<String> = match suite {
            Suite::Periods => period_records().iter().map(|r| r.name.clone()).collect(),
            Suite::Operators => crate::golden::operator_names().map(str::to_string).collect(),
            Suite::Monodromy => monodromy_records().iter().map(|r| r.name.clone()).collect(),
            Suite::Toric => toric_records().iter().map(|r| r.name.clone()).collect(),
        };
        jobs.extend(names.into_iter().filter(|n| selected(subset, n)).map(|n| (suite, n)));
    }
    let outcomes = jobs
        .into_par_iter()
        .map(|(suite, name)| {
            let status = match suite {
                Suite::Periods => check_period(period_records().iter().find(|r| r.name == name).unwrap()),
                Suite::Operators => check_operator(&name),
                Suite::Monodromy => check_monodromy(&name),
                Suite::Toric => check_toric(toric_records().iter().find(|r| r.name == name).unwrap(), weights.as_deref()),
            };
            Outcome { suite, name, status }
        })
        .collect();
    Ok(VerifyReport { outcomes })
}
