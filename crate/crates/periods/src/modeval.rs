//! Evaluation of period series modulo word-size primes, lifted back to exact values.
//!
//! Every evaluator is a [`Kernel`] producing c_0..c_M modulo one prime. The driver
//! scales to α_d = d!·c_d, Chinese-remainders over successive primes and stops once each
//! α_d has had an unchanged symmetric lift for two consecutive primes. Non-integral
//! data falls back to rational reconstruction, accepted when two attempts agree.

use std::sync::Mutex;

use exactnum::modular::{large_primes_from, Crt, FactorialTable, MontField};
use exactnum::rational::from_bigint;
use exactnum::BigRational;
use num_traits::One;
use rayon::prelude::*;
use series::TruncatedSeries;

use crate::error::PeriodError;

const MAX_PRIMES: usize = 2000;

/// Tables for one prime: factorials, inverses and harmonic numbers in Montgomery form.
pub struct PrimeCtx {
    pub f: MontField,
    pub fact: Vec<u64>,
    pub inv_fact: Vec<u64>,
    pub inv: Vec<u64>,
    pub harmonic: Vec<u64>,
}

impl PrimeCtx {
    pub fn new(p: u64, n: usize) -> Self {
        let f = MontField::new(p);
        let FactorialTable { fact, inv_fact, inv } = FactorialTable::new(&f, n);
        let mut harmonic = vec![0; n + 1];
        for k in 1..=n {
            harmonic[k] = f.add(harmonic[k - 1], inv[k]);
        }
        PrimeCtx { f, fact, inv_fact, inv, harmonic }
    }

    #[inline]
    pub fn int(&self, n: i64) -> u64 {
        self.f.from_i64(n)
    }

    /// (-1)^k · x
    #[inline]
    pub fn signed(&self, k: usize, x: u64) -> u64 {
        if k % 2 == 1 {
            self.f.neg(x)
        } else {
            x
        }
    }

    /// Table of x_k^e for a table x.
    pub fn powers(&self, xs: &[u64], e: u32) -> Vec<u64> {
        xs.iter().map(|&x| self.f.pow(x, e as u64)).collect()
    }
}

/// A series evaluator modulo a single prime.
pub trait Kernel: Send + Sync {
    /// Truncation order M; `residues` returns M + 1 values.
    fn order(&self) -> usize;
    /// Largest argument of any factorial, inverse or harmonic number looked up.
    fn table_size(&self) -> usize;
    fn residues(&self, ctx: &PrimeCtx) -> Result<Vec<u64>, PeriodError>;
}

type KernelFn = dyn Fn(&PrimeCtx, usize) -> Result<Vec<u64>, PeriodError> + Send + Sync;

/// A kernel given by a closure of (context, order).
pub struct FnKernel {
    order: usize,
    table: usize,
    f: Box<KernelFn>,
}

impl FnKernel {
    pub fn new<F>(order: usize, table: usize, f: F) -> Self
    where
        F: Fn(&PrimeCtx, usize) -> Result<Vec<u64>, PeriodError> + Send + Sync + 'static,
    {
        FnKernel { order, table, f: Box::new(f) }
    }
}

impl Kernel for FnKernel {
    fn order(&self) -> usize {
        self.order
    }
    fn table_size(&self) -> usize {
        self.table
    }
    fn residues(&self, ctx: &PrimeCtx) -> Result<Vec<u64>, PeriodError> {
        (self.f)(ctx, self.order)
    }
}

/// Product of the factor series (truncated at the common order).
pub struct ProductKernel {
    factors: Vec<Box<dyn Kernel>>,
    order: usize,
}

impl ProductKernel {
    pub fn new(factors: Vec<Box<dyn Kernel>>, order: usize) -> Self {
        ProductKernel { factors, order }
    }
}

impl Kernel for ProductKernel {
    fn order(&self) -> usize {
        self.order
    }
    fn table_size(&self) -> usize {
        self.factors.iter().map(|k| k.table_size()).max().unwrap_or(0)
    }
    fn residues(&self, ctx: &PrimeCtx) -> Result<Vec<u64>, PeriodError> {
        let mut acc = vec![0; self.order + 1];
        acc[0] = ctx.f.one();
        for k in &self.factors {
            let r = k.residues(ctx)?;
            acc = mul_trunc(&ctx.f, &acc, &r, self.order);
        }
        Ok(acc)
    }
}

/// Multiplies a raw sum by e^{-ct}, c its linear coefficient.
pub struct NormalizedKernel {
    inner: Box<dyn Kernel>,
}

impl NormalizedKernel {
    pub fn new(inner: Box<dyn Kernel>) -> Self {
        NormalizedKernel { inner }
    }
}

impl Kernel for NormalizedKernel {
    fn order(&self) -> usize {
        self.inner.order()
    }
    fn table_size(&self) -> usize {
        self.inner.table_size().max(self.inner.order())
    }
    fn residues(&self, ctx: &PrimeCtx) -> Result<Vec<u64>, PeriodError> {
        let raw = self.inner.residues(ctx)?;
        if raw.len() < 2 || raw[1] == 0 {
            return Ok(raw);
        }
        let e = exp_neg(ctx, raw[1], raw.len() - 1);
        Ok(mul_trunc(&ctx.f, &raw, &e, raw.len() - 1))
    }
}

pub fn mul_trunc(f: &MontField, a: &[u64], b: &[u64], order: usize) -> Vec<u64> {
    let mut out = vec![0; order + 1];
    for (i, &x) in a.iter().enumerate().take(order + 1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Coefficients of e^{-ct} up to t^order. Needs factorials up to `order`.
pub fn exp_neg(ctx: &PrimeCtx, c: u64, order: usize) -> Vec<u64> {
    let f = &ctx.f;
    let mc = f.neg(c);
    let mut out = vec![0; order + 1];
    let mut pw = f.one();
    for (k, o) in out.iter_mut().enumerate() {
        *o = f.mul(pw, ctx.inv_fact[k]);
        pw = f.mul(pw, mc);
    }
    out
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

fn primes(skip: usize, count: usize) -> Vec<u64> {
    let mut cache = PRIMES.lock().unwrap();
    if cache.len() < skip + count {
        let have = cache.len();
        let want = (skip + count).max(2 * have).max(64);
        let more = large_primes_from(have, want - have);
        cache.extend(more);
    }
    cache[skip..skip + count].to_vec()
}

/// Run a kernel to an exact series.
pub fn evaluate(kernel: &dyn Kernel) -> Result<TruncatedSeries, PeriodError> {
    let order = kernel.order();
    let table = kernel.table_size().max(order) + 1;
    let mut crt = Crt::new(order + 1);
    let mut streak = vec![0u8; order + 1];
    let mut last_rational: Option<Vec<BigRational>> = None;
    let batch = rayon::current_num_threads().max(1);
    let mut used = 0;
    while used < MAX_PRIMES {
        let ps = primes(used, batch);
        let results: Vec<Result<Vec<u64>, PeriodError>> = ps
            .par_iter()
            .map(|&p| {
                let ctx = PrimeCtx::new(p, table);
                let r = kernel.residues(&ctx)?;
                Ok(r.iter().enumerate().map(|(d, &c)| ctx.f.to_u64(ctx.f.mul(c, ctx.fact[d]))).collect())
            })
            .collect();
        for (&p, r) in ps.iter().zip(results) {
            let r = r?;
            let flags = crt.push_tracked(p, &r);
            used += 1;
            for (s, ok) in streak.iter_mut().zip(flags) {
                *s = if ok { s.saturating_add(1) } else { 0 };
            }
            if used >= 2 && streak.iter().all(|&s| s >= 2) {
                let alphas = crt.symmetric().into_iter().map(from_bigint).collect();
                return Ok(from_alphas(alphas));
            }
            if used % 4 == 0 {
                let attempt = crt.rational();
                if attempt.is_some() && attempt == last_rational {
                    return Ok(from_alphas(attempt.unwrap()));
                }
                last_rational = attempt;
            }
        }
    }
    Err(PeriodError::NoConvergence(MAX_PRIMES))
}

fn from_alphas(alphas: Vec<BigRational>) -> TruncatedSeries {
    let mut fact = BigRational::one();
    let mut out = Vec::with_capacity(alphas.len());
    for (d, a) in alphas.into_iter().enumerate() {
        if d > 0 {
            fact *= BigRational::from_integer((d as u64).into());
        }
        out.push(a / &fact);
    }
    TruncatedSeries::new(out)
}
