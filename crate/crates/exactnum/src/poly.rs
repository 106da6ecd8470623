//! Dense univariate polynomials over Q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, format_rational, from_bigint, gcd_all, BigRational};

/// Coefficients in ascending degree, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().cloned().map(from_bigint).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of x^k (zero past the end).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0 (`None` for zero).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let Some(n) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n < dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        // Work on primitive integer parts to keep coefficient growth down.
        let mut a = a.primitive_part();
        let mut b = b.primitive_part();
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Integer polynomial with content 1 and positive leading coefficient, equal to
    /// `self` up to a rational factor.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let ints = self.to_primitive_integers();
        Self::from_bigints(&ints)
    }

    /// The coefficients of [`UniPoly::primitive_part`] as integers.
    pub fn to_primitive_integers(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = common_denominator(&self.coeffs);
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = gcd_all(&ints);
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        let g = g * sign;
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        ints
    }

    /// `self(x + a)`.
    pub fn taylor_shift(&self, a: &BigRational) -> UniPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Square-free decomposition (Yun): pairs (a_i, i) with self = lc * prod a_i^i,
    /// every a_i monic, square-free and pairwise coprime. Zero yields nothing.
    pub fn square_free(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = UniPoly::gcd(&f, &fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = fp.div_exact(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = UniPoly::gcd(&b, &d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).unwrap();
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_exact(&g).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Canonical ordering: degree, then coefficients lexicographically from the
    /// constant term upward.
    pub fn canonical_cmp(&self, other: &UniPoly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

/// Pseudo-remainder over Z of primitive integer polynomials (as rationals).
fn pseudo_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let db = b.degree().unwrap();
    let mut r: Vec<BigInt> = a.to_integers();
    let bi: Vec<BigInt> = b.to_integers();
    let lb = bi[db].clone();
    while r.len() > db && !r.is_empty() {
        let n = r.len() - 1;
        let lr = r[n].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let g = lr.gcd(&lb);
        let ma = &lb / &g;
        let mb = &lr / &g;
        for c in r.iter_mut() {
            *c *= &ma;
        }
        for (j, bc) in bi.iter().enumerate() {
            r[n - db + j] -= &mb * bc;
        }
        r.pop();
    }
    UniPoly::from_bigints(&r)
}

impl UniPoly {
    /// Coefficients as integers; panics if any coefficient is not integral.
    pub fn to_integers(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral coefficient");
                c.numer().clone()
            })
            .collect()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for UniPoly {
    /// Descending powers of `t`, e.g. `32*t^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = format_rational(&a);
            match (k, a.is_one()) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{body}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{body}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Multiplicity of the rational root `a` of `p`.
pub fn root_multiplicity(p: &UniPoly, a: &BigRational) -> usize {
    let lin = UniPoly::new(vec![-a.clone(), BigRational::one()]);
    let mut q = p.clone();
    let mut m = 0;
    while !q.is_zero() {
        match q.div_exact(&lin) {
            Some(next) => {
                q = next;
                m += 1;
            }
            None => break,
        }
    }
    m
}
