use exactnum::{format_rational, BigInt, BigRational};
use num_traits::{One, Zero};

use crate::error::SeriesError;

/// Coefficients c_0..c_M of a power series known modulo t^{M+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient list; a series knows at least c_0.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    /// 1 + O(t^{order+1}).
    pub fn one(order: usize) -> Self {
        let mut c = vec![BigRational::zero(); order + 1];
        c[0] = BigRational::one();
        Self::new(c)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &BigRational {
        &self.coeffs[d]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.truncation_order())].to_vec())
    }

    /// α_d = d!·c_d.
    pub fn regularize(&self) -> Self {
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (d, c) in self.coeffs.iter().enumerate() {
            if d > 0 {
                fact *= d;
            }
            out.push(c * BigRational::from_integer(fact.clone()));
        }
        Self::new(out)
    }

    /// Inverse of [`TruncatedSeries::regularize`].
    pub fn unregularize(&self) -> Self {
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (d, c) in self.coeffs.iter().enumerate() {
            if d > 0 {
                fact *= d;
            }
            out.push(c / BigRational::from_integer(fact.clone()));
        }
        Self::new(out)
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.truncation_order().min(other.truncation_order());
        let mut out = vec![BigRational::zero(); m + 1];
        for (i, a) in self.coeffs[..=m].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The series of e^{-ct} to the same order.
    pub fn exp_linear(c: &BigRational, order: usize) -> Self {
        let mut out = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        let minus_c = -c;
        for k in 0..=order {
            if k > 0 {
                term = term * &minus_c / BigRational::from_integer(k.into());
            }
            out.push(term.clone());
        }
        Self::new(out)
    }

    /// Returns (e^{-ct}·g, c) with c the linear coefficient of g.
    pub fn exp_linear_normalize(&self) -> Result<(Self, BigRational), SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NotNormalized(format_rational(&self.coeffs[0])));
        }
        let c = if self.truncation_order() >= 1 { self.coeffs[1].clone() } else { BigRational::zero() };
        if c.is_zero() {
            return Ok((self.clone(), c));
        }
        let e = Self::exp_linear(&c, self.truncation_order());
        Ok((self.mul(&e), c))
    }

    /// Whether c_d = 0 for every d not divisible by r.
    pub fn supported_on_multiples_of(&self, r: usize) -> bool {
        self.coeffs.iter().enumerate().all(|(d, c)| d % r == 0 || c.is_zero())
    }
}
