use exactnum::rational::{common_denominator, gcd_all};
use exactnum::{int, BigInt, BigRational, UniPoly};
use num_traits::{Signed, Zero};
use series::TruncatedSeries;

use crate::error::QdeError;

/// L = Σ_{k≤N} Σ_{l≤r} a_{kl} t^l D^k, stored as rows k of length r + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    coeffs: Vec<Vec<BigRational>>,
}

impl DiffOperator {
    /// Rows must share one length and the top row must be nonzero.
    pub fn new(coeffs: Vec<Vec<BigRational>>) -> Result<Self, QdeError> {
        let width = coeffs.first().map(Vec::len).ok_or_else(|| QdeError::InvalidOperator("no rows".into()))?;
        if width == 0 || coeffs.iter().any(|r| r.len() != width) {
            return Err(QdeError::InvalidOperator("coefficient rows must be nonempty and of equal length".into()));
        }
        if coeffs.last().unwrap().iter().all(Zero::is_zero) {
            return Err(QdeError::InvalidOperator("leading coefficient p_N is zero".into()));
        }
        Ok(DiffOperator { coeffs })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, QdeError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeff(&self, k: usize, l: usize) -> &BigRational {
        &self.coeffs[k][l]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.coeffs
    }

    /// p_k(t).
    pub fn p(&self, k: usize) -> UniPoly {
        UniPoly::new(self.coeffs[k].clone())
    }

    pub fn leading(&self) -> UniPoly {
        self.p(self.order())
    }

    /// Coefficient n of L f is Σ a_{kl} (n-l)^k f_{n-l}. The result is kept to order M_f - r.
    pub fn apply(&self, f: &TruncatedSeries) -> TruncatedSeries {
        let r = self.degree();
        let top = f.truncation_order().saturating_sub(r);
        let out = (0..=top)
            .map(|n| {
                let mut acc = BigRational::zero();
                for l in 0..=r.min(n) {
                    let x = int((n - l) as i64);
                    let mut p = BigRational::zero();
                    for k in (0..=self.order()).rev() {
                        p = p * &x + &self.coeffs[k][l];
                    }
                    acc += p * f.coeff(n - l);
                }
                acc
            })
            .collect();
        TruncatedSeries::new(out)
    }

    /// Integer coefficients with unit content, trailing zero columns removed, and the sign
    /// fixed by the t^r coefficient of p_N (the highest nonzero one, should that vanish).
    pub fn canonicalize(&self) -> DiffOperator {
        let width = (0..=self.degree())
            .rev()
            .find(|&l| self.coeffs.iter().any(|row| !row[l].is_zero()))
            .map_or(1, |l| l + 1);
        let den = common_denominator(self.coeffs.iter().flatten());
        let ints: Vec<Vec<BigInt>> = self
            .coeffs
            .iter()
            .map(|row| row[..width].iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let mut g = gcd_all(ints.iter().flatten());
        let lead = ints.last().unwrap().iter().rev().find(|x| !x.is_zero()).unwrap();
        if lead.is_negative() {
            g = -g;
        }
        let coeffs = ints
            .into_iter()
            .map(|row| row.into_iter().map(|x| BigRational::from_integer(x / &g)).collect())
            .collect();
        DiffOperator { coeffs }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Integer coefficients of a canonical operator.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.canonicalize().coeffs.iter().map(|row| row.iter().map(|q| q.numer().clone()).collect()).collect()
    }
}

pub fn equal_up_to_scalar(a: &DiffOperator, b: &DiffOperator) -> bool {
    a.canonicalize() == b.canonicalize()
}

impl std::fmt::Display for DiffOperator {
    /// Human-readable form, e.g. `(4t^2 - 1)D + 4t^2`.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for k in (0..=self.order()).rev() {
            let terms: Vec<(usize, &BigRational)> =
                (0..=self.degree()).rev().filter(|&l| !self.coeffs[k][l].is_zero()).map(|l| (l, &self.coeffs[k][l])).collect();
            if terms.is_empty() {
                continue;
            }
            let mut poly = String::new();
            for (i, (l, c)) in terms.iter().enumerate() {
                let neg = c.is_negative();
                let mag = c.abs();
                if i == 0 {
                    if neg {
                        poly.push('-');
                    }
                } else {
                    poly.push_str(if neg { " - " } else { " + " });
                }
                let unit = mag == int(1);
                if !unit || *l == 0 {
                    poly.push_str(&exactnum::format_rational(&mag));
                }
                match l {
                    0 => {}
                    1 => poly.push('t'),
                    _ => poly.push_str(&format!("t^{l}")),
                }
            }
            let op = match k {
                0 => String::new(),
                1 => "D".into(),
                _ => format!("D^{k}"),
            };
            let body = if terms.len() > 1 && k > 0 { format!("({poly}){op}") } else if k > 0 && poly == "1" { op } else if k > 0 && poly == "-1" { format!("-{op}") } else { format!("{poly}{op}") };
            if first {
                write!(out, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(out, " - {rest}")?;
            } else {
                write!(out, " + {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}
