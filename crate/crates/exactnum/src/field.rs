//! Number fields Q[x]/(q) and their elements.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::ExactError;
use crate::factor::{factor_over_q, rational_roots};
use crate::poly::{root_multiplicity, UniPoly};
use num_bigint::BigInt;

use crate::rational::{common_denominator, format_rational, BigRational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    minpoly: UniPoly,
    /// Numerators of x^{n+k} mod q for k = 0..n-1, over the common denominator `high_den`.
    high: Vec<Vec<BigInt>>,
    high_den: BigInt,
}

impl NumberField {
    /// `q` is made monic and must be irreducible over Q.
    pub fn new(q: &UniPoly) -> Result<Arc<Self>, ExactError> {
        match q.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(ExactError::BadMinimalPolynomial),
        }
        let f = factor_over_q(q)?;
        if f.factors.len() != 1 || f.factors[0].1 != 1 {
            return Err(ExactError::BadMinimalPolynomial);
        }
        Ok(Arc::new(Self::build(q.monic())))
    }

    fn build(minpoly: UniPoly) -> Self {
        let n = minpoly.degree().unwrap();
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut cur: Vec<BigRational> = minpoly.coeffs()[..n].iter().map(|c| -c).collect();
        for _ in 0..n {
            rows.push(cur.clone());
            let top = cur.pop().unwrap();
            cur.insert(0, BigRational::zero());
            for (c, q) in cur.iter_mut().zip(minpoly.coeffs()) {
                *c -= &top * q;
            }
        }
        let high_den = common_denominator(rows.iter().flatten());
        let high = rows
            .iter()
            .map(|r| r.iter().map(|c| c.numer() * (&high_den / c.denom())).collect())
            .collect();
        NumberField { minpoly, high, high_den }
    }

    /// Q itself, presented as Q[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Arc::new(Self::build(UniPoly::x()))
    }

    pub fn minimal_polynomial(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct NFElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field.minpoly == other.field.minpoly
    }
}

impl Eq for NFElement {}

impl NFElement {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        NFElement { field: field.clone(), coords: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = q;
        e
    }

    /// The class of x.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &UniPoly::x())
    }

    /// Reduce a polynomial modulo the minimal polynomial.
    pub fn from_poly(field: &Arc<NumberField>, p: &UniPoly) -> Self {
        let n = field.degree();
        let mut c = p.coeffs().to_vec();
        reduce_in_place(&mut c, &field.minpoly);
        c.resize(n, BigRational::zero());
        NFElement { field: field.clone(), coords: c }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn as_poly(&self) -> UniPoly {
        UniPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| &self.coords[0])
    }

    pub fn add(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        NFElement { field: self.field.clone(), coords }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        NFElement { field: self.field.clone(), coords }
    }

    pub fn neg(&self) -> Self {
        NFElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        NFElement { field: self.field.clone(), coords: self.coords.iter().map(|a| a * q).collect() }
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        let mut e = self.clone();
        e.coords[0] += q;
        e
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coords.len();
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        if n == 1 {
            return Self::from_rational(&self.field, &self.coords[0] * &o.coords[0]);
        }
        // Integer convolution over common denominators, then one reduction by the table.
        let (na, da) = numerators(&self.coords);
        let (nb, db) = numerators(&o.coords);
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in na.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nb.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let f = &self.field;
        let mut out: Vec<BigInt> = prod[..n].iter().map(|p| p * &f.high_den).collect();
        for (k, p) in prod[n..].iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&f.high[k]) {
                if !r.is_zero() {
                    *o += p * r;
                }
            }
        }
        let den = da * db * &f.high_den;
        let coords = out.into_iter().map(|x| BigRational::new(x, den.clone())).collect();
        NFElement { field: f.clone(), coords }
    }

    /// Multiply by the generator x (a shift and one reduction step).
    pub fn mul_generator(&self) -> Self {
        let n = self.coords.len();
        let q = self.field.minpoly.coeffs();
        let top = self.coords[n - 1].clone();
        let mut c = Vec::with_capacity(n);
        c.push(BigRational::zero());
        c.extend(self.coords[..n - 1].iter().cloned());
        if !top.is_zero() {
            for (ci, qi) in c.iter_mut().zip(q) {
                *ci -= &top * qi;
            }
        }
        NFElement { field: self.field.clone(), coords: c }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over Q.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        let (mut r0, mut r1) = (self.field.minpoly.clone(), self.as_poly());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant when the minimal polynomial is irreducible.
        if r0.degree() != Some(0) {
            return Err(ExactError::DivisionByZero);
        }
        let c = r0.coeff(0).recip();
        Ok(Self::from_poly(&self.field, &t0.scale(&c)))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.inv()?))
    }
}

fn numerators(c: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(c);
    (c.iter().map(|x| x.numer() * (&d / x.denom())).collect(), d)
}

fn reduce_in_place(c: &mut Vec<BigRational>, q: &UniPoly) {
    let n = q.degree().unwrap();
    let qc = q.coeffs();
    while c.len() > n {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let base = c.len() - n;
        for (j, qj) in qc[..n].iter().enumerate() {
            c[base + j] -= &top * qj;
        }
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.as_poly();
        if self.field.degree() == 1 {
            return write!(f, "{}", format_rational(&self.coords[0]));
        }
        write!(f, "{}", p.to_string().replace('t', "a"))
    }
}

/// A polynomial in λ with coefficients in one number field, ascending.
pub type NFPoly = Vec<NFElement>;

pub fn nf_poly_eval_rational(f: &[NFElement], x: &BigRational) -> NFElement {
    let field = f[0].field().clone();
    let mut acc = NFElement::zero(&field);
    for c in f.iter().rev() {
        acc = acc.scale(x).add(c);
    }
    acc
}

/// The rational roots of `f` (coefficients in a number field) with multiplicities.
///
/// Every coordinate polynomial of `f` must vanish at a rational root, so candidates
/// come from the rational roots of their gcd; each is then confirmed by substitution.
pub fn rational_roots_over_nf(f: &[NFElement]) -> Vec<(BigRational, usize)> {
    let f: Vec<NFElement> = {
        let mut v = f.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    if f.is_empty() {
        return Vec::new();
    }
    let deg = f[0].field().degree();
    let mut g = UniPoly::zero();
    for i in 0..deg {
        let coord = UniPoly::new(f.iter().map(|c| c.coords()[i].clone()).collect());
        g = UniPoly::gcd(&g, &coord);
    }
    let mut out = Vec::new();
    for (root, _) in rational_roots(&g) {
        if !nf_poly_eval_rational(&f, &root).is_zero() {
            continue;
        }
        // Multiplicity over the field equals the minimum over coordinates.
        let m = (0..deg)
            .filter_map(|i| {
                let coord = UniPoly::new(f.iter().map(|c| c.coords()[i].clone()).collect());
                (!coord.is_zero()).then(|| root_multiplicity(&coord, &root))
            })
            .min()
            .unwrap_or(0);
        out.push((root, m));
    }
    out
}
