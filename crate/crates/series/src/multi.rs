use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use exactnum::BigRational;
use num_traits::{One, Zero};

/// Polynomial in `num_vars` formal classes, truncated above total degree `max_total_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolyTrunc {
    num_vars: usize,
    max_total_degree: u32,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPolyTrunc {
    pub fn zero(num_vars: usize, max_total_degree: u32) -> Self {
        MultiPolyTrunc { num_vars, max_total_degree, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, max_total_degree: u32, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars, max_total_degree);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize, max_total_degree: u32) -> Self {
        Self::constant(num_vars, max_total_degree, BigRational::one())
    }

    /// The class p_i (0-based index).
    pub fn var(num_vars: usize, max_total_degree: u32, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars, max_total_degree);
        p.add_term(e, BigRational::one());
        p
    }

    /// c + Σ a_i p_i.
    pub fn linear(num_vars: usize, max_total_degree: u32, c: BigRational, a: &[BigRational]) -> Self {
        let mut p = Self::constant(num_vars, max_total_degree, c);
        for (i, ai) in a.iter().enumerate() {
            let mut e = vec![0; num_vars];
            e[i] = 1;
            p.add_term(e, ai.clone());
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds c·p^e, dropping it if the total degree exceeds the bound.
    pub fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        assert_eq!(e.len(), self.num_vars);
        if c.is_zero() || e.iter().sum::<u32>() > self.max_total_degree {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.num_vars, self.max_total_degree);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.num_vars, o.num_vars);
        let bound = self.max_total_degree.min(o.max_total_degree);
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &o.terms {
                if da + eb.iter().sum::<u32>() > bound {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPolyTrunc { num_vars: self.num_vars, max_total_degree: bound, terms: acc }
    }

    /// (L + k)^{-e} = k^{-e} Σ_j binom(-e, j) (L/k)^j for a linear form L without
    /// constant term and k ≠ 0, truncated at the degree bound.
    pub fn inverse_power(linear: &Self, k: &BigRational, e: u32) -> Self {
        let (n, d) = (linear.num_vars, linear.max_total_degree);
        let kinv = k.recip();
        let l_over_k = linear.scale(&kinv);
        let mut out = Self::zero(n, d);
        let mut power = Self::one(n, d);
        // binom(-e, j) = (-1)^j binom(e + j - 1, j)
        let mut binom = BigRational::one();
        for j in 0..=d {
            if j > 0 {
                binom = -binom * BigRational::from_integer((e + j - 1).into())
                    / BigRational::from_integer(j.into());
                power = power.mul(&l_over_k);
            }
            out = out.add(&power.scale(&binom));
        }
        let mut kpow = BigRational::one();
        for _ in 0..e {
            kpow *= &kinv;
        }
        out.scale(&kpow)
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.num_vars, self.max_total_degree);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// True when every coefficient of total degree below r(r-1)/2 vanishes and the
    /// part of that degree is a multiple of the Vandermonde product.
    pub fn is_vandermonde_multiple(&self) -> bool {
        let r = self.num_vars;
        let top = (r * (r.saturating_sub(1)) / 2) as u32;
        if self.terms.keys().any(|e| e.iter().sum::<u32>() < top) {
            return false;
        }
        let lead = extract_leading_vandermonde(self);
        let v = vandermonde(r, top);
        self.homogeneous_part(top) == v.scale(&lead).homogeneous_part(top)
    }
}

/// ∏_{i<j} (p_j - p_i) in r variables.
pub fn vandermonde(r: usize, max_total_degree: u32) -> MultiPolyTrunc {
    let mut v = MultiPolyTrunc::one(r, max_total_degree);
    for j in 0..r {
        for i in 0..j {
            let diff = MultiPolyTrunc::var(r, max_total_degree, j)
                .add(&MultiPolyTrunc::var(r, max_total_degree, i).scale(&-BigRational::one()));
            v = v.mul(&diff);
        }
    }
    v
}

/// Coefficient of p_2 p_3^2 ... p_r^{r-1}, the leading monomial of the Vandermonde
/// product (where it has coefficient 1).
pub fn extract_leading_vandermonde(p: &MultiPolyTrunc) -> BigRational {
    let e: Vec<u32> = (0..p.num_vars() as u32).collect();
    p.coeff(&e)
}
