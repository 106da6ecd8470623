use exactnum::modular::{large_primes_from, Crt, MontField};
use exactnum::{int, BigRational};
use num_traits::Zero;
use rayon::prelude::*;
use series::TruncatedSeries;

use crate::error::QdeError;
use crate::operator::DiffOperator;

/// Excess equations required beyond the number of unknowns.
pub const DEFAULT_MARGIN: usize = 50;

const MAX_LIFT_PRIMES: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Found(DiffOperator),
    NoAnnihilator,
}

impl Reconstruction {
    pub fn operator(self) -> Option<DiffOperator> {
        match self {
            Reconstruction::Found(op) => Some(op),
            Reconstruction::NoAnnihilator => None,
        }
    }
}

fn residues(f: &TruncatedSeries, fld: &MontField) -> Option<Vec<u64>> {
    f.coeffs().iter().map(|c| fld.from_rational(c)).collect()
}

/// Rows n = 0..=M, columns (l, k) in l-major order: entry (n-l)^k f_{n-l}.
fn system(fld: &MontField, fr: &[u64], order: usize, degree: usize) -> Vec<Vec<u64>> {
    let w = order + 1;
    (0..fr.len())
        .map(|n| {
            let mut row = vec![0u64; (degree + 1) * w];
            for l in 0..=degree.min(n) {
                let x = fld.from_u64((n - l) as u64);
                let mut v = fr[n - l];
                for k in 0..w {
                    row[l * w + k] = v;
                    v = fld.mul(v, x);
                }
            }
            row
        })
        .collect()
}

/// rank of the first c columns, for c = 0..=cols.
fn prefix_ranks(fld: &MontField, mut m: Vec<Vec<u64>>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut prof = vec![0; cols + 1];
    let mut rank = 0;
    for c in 0..cols {
        if let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) {
            m.swap(rank, piv);
            let inv = fld.inv(m[rank][c]);
            for j in c..cols {
                m[rank][j] = fld.mul(m[rank][j], inv);
            }
            let (top, rest) = m.split_at_mut(rank + 1);
            let pr = &top[rank];
            for row in rest.iter_mut() {
                let fac = row[c];
                if fac != 0 {
                    for j in c..cols {
                        row[j] = fld.sub(row[j], fld.mul(fac, pr[j]));
                    }
                }
            }
            rank += 1;
        }
        prof[c + 1] = rank;
    }
    prof
}

/// Kernel of a nullity-one system, normalized so the free coordinate is 1; with the free column.
fn kernel_vector(fld: &MontField, mut m: Vec<Vec<u64>>) -> Option<(usize, Vec<u64>)> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            free.push(c);
            continue;
        };
        m.swap(rank, piv);
        let inv = fld.inv(m[rank][c]);
        for j in c..cols {
            m[rank][j] = fld.mul(m[rank][j], inv);
        }
        let pr = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let fac = row[c];
                for j in c..cols {
                    row[j] = fld.sub(row[j], fld.mul(fac, pr[j]));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if free.len() != 1 {
        return None;
    }
    let j = free[0];
    let mut x = vec![0u64; cols];
    x[j] = fld.one();
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = fld.neg(m[i][j]);
    }
    Some((j, x))
}

fn primes(skip: usize, count: usize) -> Vec<MontField> {
    large_primes_from(skip, count).into_iter().map(MontField::new).collect()
}

/// Nullspace dimension modulo primes (minimum over two primes), an upper bound for the
/// dimension over Q. Every column is (l, k) with l ≤ degree, k ≤ order.
pub fn modular_nullity(f: &TruncatedSeries, order: usize, degree: usize) -> usize {
    nullity_profile(f, order, degree)[degree]
}

/// Nullity for every degree 0..=degree at fixed order.
fn nullity_profile(f: &TruncatedSeries, order: usize, degree: usize) -> Vec<usize> {
    let mut profiles: Vec<Vec<usize>> = primes(0, 2)
        .par_iter()
        .filter_map(|fld| residues(f, fld).map(|fr| prefix_ranks(fld, system(fld, &fr, order, degree))))
        .collect();
    let mut skip = 2;
    while profiles.len() < 2 {
        let fld = &primes(skip, 1)[0];
        skip += 1;
        if let Some(fr) = residues(f, fld) {
            profiles.push(prefix_ranks(fld, system(fld, &fr, order, degree)));
        }
    }
    let w = order + 1;
    (0..=degree)
        .map(|r| {
            let cols = (r + 1) * w;
            profiles.iter().map(|p| cols - p[cols]).min().unwrap()
        })
        .collect()
}

/// Σ_{k,l} a_{kl} (n-l)^k f_{n-l} = 0 for every n ≤ M.
fn annihilates(op: &DiffOperator, f: &TruncatedSeries) -> bool {
    let r = op.degree();
    (0..=f.truncation_order()).all(|n| {
        let mut acc = BigRational::zero();
        for l in 0..=r.min(n) {
            let x = int((n - l) as i64);
            let mut p = BigRational::zero();
            for k in (0..=op.order()).rev() {
                p = p * &x + op.coeff(k, l);
            }
            acc += p * f.coeff(n - l);
        }
        acc.is_zero()
    })
}

fn lift(f: &TruncatedSeries, order: usize, degree: usize) -> Result<DiffOperator, QdeError> {
    let w = order + 1;
    let cols = (degree + 1) * w;
    let batch = rayon::current_num_threads().max(2);
    let mut crt = Crt::new(cols);
    let mut free_col = None;
    let mut last: Option<Vec<BigRational>> = None;
    let mut used = 0;
    while used < MAX_LIFT_PRIMES {
        let fields = primes(used, batch);
        used += batch;
        let sols: Vec<Option<(u64, usize, Vec<u64>)>> = fields
            .par_iter()
            .map(|fld| {
                let fr = residues(f, fld)?;
                let (j, x) = kernel_vector(fld, system(fld, &fr, order, degree))?;
                // Back to plain residues for Chinese remaindering.
                Some((fld.modulus(), j, x.iter().map(|&v| fld.to_u64(v)).collect()))
            })
            .collect();
        for (p, j, x) in sols.into_iter().flatten() {
            // An unlucky prime can only turn an earlier column free.
            match free_col {
                Some(c) if j < c => continue,
                Some(c) if j > c => {
                    crt = Crt::new(cols);
                    last = None;
                    free_col = Some(j);
                }
                None => free_col = Some(j),
                _ => {}
            }
            crt.push(p, &x);
        }
        let Some(vals) = crt.rational() else { continue };
        if last.as_ref() == Some(&vals) {
            let rows: Vec<Vec<BigRational>> =
                (0..w).map(|k| (0..=degree).map(|l| vals[l * w + k].clone()).collect()).collect();
            if let Ok(op) = DiffOperator::new(rows) {
                if annihilates(&op, f) {
                    return Ok(op.canonicalize());
                }
            }
        }
        last = Some(vals);
    }
    Err(QdeError::LiftFailed { order, degree })
}

/// The minimal annihilator: lowest order N ≤ max_order, then lowest degree r ≤ max_degree,
/// among systems with at least `margin` more equations than unknowns.
pub fn reconstruct(
    f: &TruncatedSeries,
    max_order: usize,
    max_degree: usize,
    margin: usize,
) -> Result<Reconstruction, QdeError> {
    if f.coeffs().iter().all(Zero::is_zero) {
        return Err(QdeError::ZeroSeries);
    }
    let equations = f.truncation_order() + 1;
    for order in 1..=max_order {
        let w = order + 1;
        let Some(top) = (0..=max_degree).rev().find(|&r| (r + 1) * w + margin <= equations) else { continue };
        let profile = nullity_profile(f, order, top);
        if let Some(degree) = (0..=top).find(|&r| profile[r] >= 1) {
            if profile[degree] > 1 {
                return Err(QdeError::Ambiguous { order, degree, dimension: profile[degree] });
            }
            return Ok(Reconstruction::Found(lift(f, order, degree)?));
        }
    }
    Ok(Reconstruction::NoAnnihilator)
}
