//! Helpers around `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ExactError;

pub type BigRational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Parse `"a"` or `"a/b"` (decimal, optional sign).
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => Ok(from_bigint(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt, ExactError> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| ExactError::Parse(format!("not an integer: {s:?}")))
}

/// `numerator/denominator`, or just the numerator when the denominator is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Fractional part in [0, 1).
pub fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}
