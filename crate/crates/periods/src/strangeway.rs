//! The Strangeway family Str_1, Str_2, Str_3 and the MM2_17 J-function identity.

use std::collections::BTreeMap;

use exactnum::BigRational;
use num_traits::{One, Zero};
use series::TruncatedSeries;

use crate::closed::{harmonic, strangeway};
use crate::error::PeriodError;
use crate::modeval::evaluate;

fn fact(n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for k in 2..=n {
        acc *= BigRational::from_integer((k as u64).into());
    }
    acc
}

/// The coefficient c_{l,m} of the J-function of the ambient bundle.
pub fn strangeway_c(l: usize, m: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..=l {
        for j in 0..=m {
            let num = fact(m + l - i - j) * fact(i + m - j) * fact(m + l - j);
            let den = [fact(l - i), fact(i), fact(m - j), fact(l)]
                .iter()
                .fold(BigRational::one(), |a, x| a * x * x * x * x)
                * fact(j)
                * fact(m);
            let corr = harmonic((i + m - j) as u64) - harmonic(i as u64) * BigRational::from_integer(4.into());
            let corr = BigRational::one() + BigRational::from_integer((2 * i as i64 - l as i64).into()) * corr;
            let term = num / den * corr;
            if (j + l) % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
    }
    acc
}

/// Str_k for k ∈ {1, 2, 3}, with the exponential prefactor e^{-t} for k = 1, 3.
pub fn period_strangeway(k: u8, order: usize) -> Result<TruncatedSeries, PeriodError> {
    if !(1..=3).contains(&k) {
        return Err(PeriodError::UnknownBuiltin(format!("Str{k}")));
    }
    evaluate(strangeway(k, order).as_ref())
}

/// Both sides of the identity for the identity component of the J-function of MM2_17
/// at z = 1, as coefficients of q_1^a q_2^b with a + b ≤ order.
///
/// Left: e^{-q_1-q_2} Σ (-q_1)^{l_1+l_2} q_2^{l_3} (l_1+l_2)!(l_1+l_3)!(l_2+l_3)!(l_1+l_2+l_3)!
///   / ((l_1!)^4 (l_2!)^4 (l_3!)^4) · (1 + (l_2-l_1)(H_{l_2+l_3} - 4H_{l_2})).
/// Right: e^{-q_1} Σ (l!)^5 m! c_{l,m} q_1^l q_2^m.
#[allow(clippy::type_complexity)]
pub fn mm2_17_identity(
    order: usize,
) -> (BTreeMap<(usize, usize), BigRational>, BTreeMap<(usize, usize), BigRational>) {
    let mut raw = BTreeMap::new();
    for l1 in 0..=order {
        for l2 in 0..=order - l1 {
            for l3 in 0..=order - l1 - l2 {
                let num = fact(l1 + l2) * fact(l1 + l3) * fact(l2 + l3) * fact(l1 + l2 + l3);
                let den = [fact(l1), fact(l2), fact(l3)].iter().fold(BigRational::one(), |a, x| a * x * x * x * x);
                let corr = harmonic((l2 + l3) as u64) - harmonic(l2 as u64) * BigRational::from_integer(4.into());
                let corr = BigRational::one() + BigRational::from_integer((l2 as i64 - l1 as i64).into()) * corr;
                let mut term = num / den * corr;
                if (l1 + l2) % 2 == 1 {
                    term = -term;
                }
                *raw.entry((l1 + l2, l3)).or_insert_with(BigRational::zero) += term;
            }
        }
    }
    let left = times_exp(&raw, order, true);
    let mut right_raw = BTreeMap::new();
    for l in 0..=order {
        for m in 0..=order - l {
            let w = fact(l) * fact(l) * fact(l) * fact(l) * fact(l) * fact(m);
            right_raw.insert((l, m), w * strangeway_c(l, m));
        }
    }
    let right = times_exp(&right_raw, order, false);
    (left, right)
}

/// Multiply a bivariate series by e^{-q_1} (and e^{-q_2} when `both`).
fn times_exp(
    a: &BTreeMap<(usize, usize), BigRational>,
    order: usize,
    both: bool,
) -> BTreeMap<(usize, usize), BigRational> {
    let e = |k: usize| {
        let v = fact(k).recip();
        if k % 2 == 1 {
            -v
        } else {
            v
        }
    };
    let mut out = BTreeMap::new();
    for (&(x, y), c) in a {
        for i in 0..=order - x - y {
            let js = if both { 0..=order - x - y - i } else { 0..=0 };
            for j in js {
                let t = c * e(i) * e(j);
                *out.entry((x + i, y + j)).or_insert_with(BigRational::zero) += t;
            }
        }
    }
    out.retain(|_, v: &mut BigRational| !v.is_zero());
    out
}
