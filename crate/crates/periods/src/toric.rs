//! Toric varieties and complete intersections in them, presented by weight data.

use series::TruncatedSeries;

use crate::error::PeriodError;
use crate::modeval::{evaluate, Kernel, NormalizedKernel, PrimeCtx};

/// Weight data: row a, column i is the pairing of the a-th basis vector of H_2 with D_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricData {
    rows: Vec<Vec<i64>>,
}

/// First Chern classes of the line bundles L_j, in the basis dual to H_2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    rows: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaPoint {
    pub beta: Vec<i64>,
    pub pairings: Vec<i64>,
    pub degree: i64,
}

impl ToricData {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, PeriodError> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.is_empty() || n == 0 {
            return Err(PeriodError::InvalidToric("empty weight matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(PeriodError::InvalidToric("ragged weight matrix".into()));
        }
        if rank(&rows) != rows.len() {
            return Err(PeriodError::InvalidToric("weight matrix does not have full row rank".into()));
        }
        let td = ToricData { rows };
        let k = td.anticanonical();
        check_positive(&td, &k)?;
        Ok(td)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_divisors(&self) -> usize {
        self.rows[0].len()
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// -K = sum of the toric divisors, in the basis dual to H_2.
    pub fn anticanonical(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn pairings(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.num_divisors())
            .map(|i| self.rows.iter().zip(beta).map(|(r, b)| r[i] * b).sum())
            .collect()
    }
}

impl BundleData {
    pub fn new(rows: Vec<Vec<i64>>, rank: usize) -> Result<Self, PeriodError> {
        if rows.iter().any(|r| r.len() != rank) {
            return Err(PeriodError::InvalidToric(format!("bundle rows must have length {rank}")));
        }
        Ok(BundleData { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Λ = sum of the c_1(L_j).
    pub fn total(&self, rank: usize) -> Vec<i64> {
        (0..rank).map(|a| self.rows.iter().map(|r| r[a]).sum()).collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by cofactor expansion; matrices here are at most 4×4 or so.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                acc += s * m[0][j] * det(&minor);
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Columns of the weight matrix, i.e. the linear forms β ↦ ⟨β, D_i⟩.
fn columns(td: &ToricData) -> Vec<Vec<i64>> {
    (0..td.num_divisors()).map(|i| td.rows.iter().map(|r| r[i]).collect()).collect()
}

/// The functional must be positive on every extreme ray of the cone {all pairings ≥ 0}.
fn check_positive(td: &ToricData, functional: &[i64]) -> Result<(), PeriodError> {
    let rho = td.rank();
    let cols = columns(td);
    for sub in subsets(cols.len(), rho - 1) {
        // Kernel of the chosen rows via signed maximal minors.
        let ray: Vec<i128> = (0..rho)
            .map(|k| {
                let minor: Vec<Vec<i128>> = sub
                    .iter()
                    .map(|&i| (0..rho).filter(|&c| c != k).map(|c| cols[i][c] as i128).collect())
                    .collect();
                if k % 2 == 0 {
                    det(&minor)
                } else {
                    -det(&minor)
                }
            })
            .collect();
        if ray.iter().all(|&x| x == 0) {
            continue;
        }
        for sign in [1i128, -1] {
            let r: Vec<i128> = ray.iter().map(|x| x * sign).collect();
            let in_cone = cols.iter().all(|c| c.iter().zip(&r).map(|(&a, &b)| a as i128 * b).sum::<i128>() >= 0);
            if in_cone {
                let v: i128 = functional.iter().zip(&r).map(|(&a, &b)| a as i128 * b).sum();
                if v <= 0 {
                    return Err(PeriodError::NotFano(r.iter().map(|&x| x as i64).collect()));
                }
            }
        }
    }
    Ok(())
}

/// Integer β with all pairings ≥ 0 and 0 ≤ functional(β) ≤ bound.
fn lattice_points(td: &ToricData, functional: &[i64], bound: i64) -> Result<Vec<Vec<i64>>, PeriodError> {
    check_positive(td, functional)?;
    let rho = td.rank();
    // Constraints a·β + b ≥ 0.
    let mut cons: Vec<(Vec<i64>, i64)> = columns(td).into_iter().map(|c| (c, 0)).collect();
    cons.push((functional.iter().map(|x| -x).collect(), bound));
    let mut lo = vec![i64::MAX; rho];
    let mut hi = vec![i64::MIN; rho];
    for sub in subsets(cons.len(), rho) {
        let a: Vec<Vec<i128>> = sub.iter().map(|&i| cons[i].0.iter().map(|&x| x as i128).collect()).collect();
        let dt = det(&a);
        if dt == 0 {
            continue;
        }
        // Cramer: β_k = det(a with column k replaced by -b) / dt.
        let num: Vec<i128> = (0..rho)
            .map(|k| {
                let m: Vec<Vec<i128>> = sub
                    .iter()
                    .zip(&a)
                    .map(|(&i, row)| {
                        let mut row = row.clone();
                        row[k] = -(cons[i].1 as i128);
                        row
                    })
                    .collect();
                det(&m)
            })
            .collect();
        let feasible = cons.iter().all(|(c, b)| {
            let v: i128 = c.iter().zip(&num).map(|(&x, &y)| x as i128 * y).sum::<i128>() + *b as i128 * dt;
            if dt > 0 {
                v >= 0
            } else {
                v <= 0
            }
        });
        if !feasible {
            continue;
        }
        for k in 0..rho {
            let (n, d) = if dt < 0 { (-num[k], -dt) } else { (num[k], dt) };
            lo[k] = lo[k].min(n.div_euclid(d) as i64);
            hi[k] = hi[k].max((n + d - 1).div_euclid(d) as i64);
        }
    }
    let mut out = Vec::new();
    if lo.iter().any(|&x| x == i64::MAX) {
        return Ok(out);
    }
    let mut beta = lo.clone();
    loop {
        if cons.iter().all(|(c, b)| dot(c, &beta) + b >= 0) {
            out.push(beta.clone());
        }
        let mut k = 0;
        while k < rho {
            beta[k] += 1;
            if beta[k] <= hi[k] {
                break;
            }
            beta[k] = lo[k];
            k += 1;
        }
        if k == rho {
            break;
        }
    }
    Ok(out)
}

/// All β with nonnegative pairings and anticanonical degree at most `max_degree`.
pub fn enumerate_beta(td: &ToricData, max_degree: i64) -> Result<Vec<BetaPoint>, PeriodError> {
    let k = td.anticanonical();
    let mut pts: Vec<BetaPoint> = lattice_points(td, &k, max_degree)?
        .into_iter()
        .map(|beta| BetaPoint { pairings: td.pairings(&beta), degree: dot(&k, &beta), beta })
        .collect();
    pts.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.beta.cmp(&b.beta)));
    Ok(pts)
}

/// Flat table of (exponent, denominator factorials, numerator factorials) per β.
struct ToricKernel {
    order: usize,
    width: usize,
    nums: usize,
    exps: Vec<u32>,
    args: Vec<u32>,
    table: usize,
}

impl ToricKernel {
    fn new(td: &ToricData, bd: Option<&BundleData>, order: usize) -> Result<Self, PeriodError> {
        let rho = td.rank();
        let mut functional = td.anticanonical();
        if let Some(bd) = bd {
            for (f, l) in functional.iter_mut().zip(bd.total(rho)) {
                *f -= l;
            }
        }
        let betas = lattice_points(td, &functional, order as i64)?;
        let width = td.num_divisors();
        let nums = bd.map(|b| b.rows.len()).unwrap_or(0);
        let mut exps = Vec::with_capacity(betas.len());
        let mut args = Vec::with_capacity(betas.len() * (width + nums));
        let mut table = 0;
        for beta in betas {
            exps.push(dot(&functional, &beta) as u32);
            for p in td.pairings(&beta) {
                args.push(p as u32);
                table = table.max(p as usize);
            }
            if let Some(bd) = bd {
                for (j, row) in bd.rows.iter().enumerate() {
                    let v = dot(row, &beta);
                    if v < 0 {
                        return Err(PeriodError::BundleNotNef { bundle: j, beta });
                    }
                    args.push(v as u32);
                    table = table.max(v as usize);
                }
            }
        }
        Ok(ToricKernel { order, width, nums, exps, args, table })
    }
}

impl Kernel for ToricKernel {
    fn order(&self) -> usize {
        self.order
    }
    fn table_size(&self) -> usize {
        self.table
    }
    fn residues(&self, ctx: &PrimeCtx) -> Result<Vec<u64>, PeriodError> {
        let f = &ctx.f;
        let mut out = vec![0; self.order + 1];
        let stride = self.width + self.nums;
        for (i, &e) in self.exps.iter().enumerate() {
            let a = &self.args[i * stride..(i + 1) * stride];
            let mut term = ctx.inv_fact[a[0] as usize];
            for &x in &a[1..self.width] {
                term = f.mul(term, ctx.inv_fact[x as usize]);
            }
            for &x in &a[self.width..] {
                term = f.mul(term, ctx.fact[x as usize]);
            }
            out[e as usize] = f.add(out[e as usize], term);
        }
        Ok(out)
    }
}

pub(crate) fn toric_kernel(td: &ToricData, order: usize) -> Result<Box<dyn Kernel>, PeriodError> {
    Ok(Box::new(ToricKernel::new(td, None, order)?))
}

pub(crate) fn toric_ci_kernel(td: &ToricData, bd: &BundleData, order: usize) -> Result<Box<dyn Kernel>, PeriodError> {
    Ok(Box::new(NormalizedKernel::new(Box::new(ToricKernel::new(td, Some(bd), order)?))))
}

pub fn period_toric(td: &ToricData, order: usize) -> Result<TruncatedSeries, PeriodError> {
    evaluate(toric_kernel(td, order)?.as_ref())
}

pub fn period_toric_ci(td: &ToricData, bd: &BundleData, order: usize) -> Result<TruncatedSeries, PeriodError> {
    evaluate(toric_ci_kernel(td, bd, order)?.as_ref())
}
