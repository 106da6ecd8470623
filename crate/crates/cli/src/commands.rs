//! The four subcommands. Each returns the text for standard output.

use std::fmt::Write;
use std::path::Path;

use exactnum::format_rational;
use monodromy::{is_fuchsian, ramification};
use qde::{operator_to_toml, reconstruct, write_operator, Reconstruction};
use series::write_series;

use crate::error::CliError;
use crate::source;

pub fn cmd_period(src: &str, terms: usize, regularized: bool, output: Option<&Path>) -> Result<String, CliError> {
    let mut g = source::period(src, terms)?;
    if regularized {
        g = g.regularize();
    }
    if let Some(path) = output {
        write_series(path, &g)?;
    }
    let mut out = String::new();
    for (d, c) in g.coeffs().iter().enumerate() {
        writeln!(out, "{d} {}", format_rational(c)).unwrap();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct QdeOptions {
    pub terms: usize,
    pub max_order: usize,
    pub max_degree: usize,
    pub margin: usize,
}

impl Default for QdeOptions {
    fn default() -> Self {
        QdeOptions {
            terms: crate::verify::OPERATOR_TERMS,
            max_order: crate::verify::MAX_ORDER,
            max_degree: crate::verify::MAX_DEGREE,
            margin: qde::DEFAULT_MARGIN,
        }
    }
}

pub fn cmd_qde(src: &str, opts: QdeOptions, output: Option<&Path>) -> Result<String, CliError> {
    let g = source::regularized_series(src, opts.terms)?;
    let op = match reconstruct(&g, opts.max_order, opts.max_degree, opts.margin)? {
        Reconstruction::Found(op) => op,
        Reconstruction::NoAnnihilator => {
            return Err(CliError::Unsupported(format!(
                "no annihilator within limits (order <= {}, degree <= {}, margin {}, {} coefficients)",
                opts.max_order,
                opts.max_degree,
                opts.margin,
                g.truncation_order() + 1
            )))
        }
    };
    match output {
        Some(path) => {
            write_operator(path, &op)?;
            Ok(format!("{op}\n"))
        }
        None => Ok(operator_to_toml(&op)),
    }
}

/// With `table`, points of trivial monodromy are left out.
pub fn cmd_analyze(src: &str, table: bool) -> Result<String, CliError> {
    let op = source::operator(src)?;
    let fuchsian = is_fuchsian(&op)?;
    if let Some(p) = fuchsian.first_irregular() {
        return Err(CliError::Unsupported(format!("not Fuchsian: irregular singularity at {}", p.label())));
    }
    let report = ramification(&op)?;
    let mut out = String::new();
    writeln!(out, "operator: order {} degree {}", op.order(), op.degree()).unwrap();
    for p in &report.per_point {
        if table && p.monodromy.is_trivial() {
            continue;
        }
        writeln!(out, "{}  contribution {} x {}", p.monodromy, p.contribution, p.conjugates).unwrap();
    }
    writeln!(out, "rf = {}, rank = {}, defect = {}: {}", report.rf, report.rank, report.defect, report.verdict()).unwrap();
    if report.defect < 0 {
        return Err(CliError::Mismatch(format!("{out}negative ramification defect")));
    }
    Ok(out)
}
