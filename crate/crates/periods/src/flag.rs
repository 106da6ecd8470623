//! Vandermonde-coefficient extraction for the Grassmannian-type sums of V4_16 (r = 3)
//! and V4_18 (r = 5).
//!
//! Summand for l = (l_1..l_r), n = |l|, P = p_1 + ... + p_r:
//!   ∏_{k≤n} (P+k)^a · ∏_j ∏_{k≤l_j} (p_j+k)^{-b} · ∏_j ∏_{k≤n-l_j} (P-p_j+k) · ∏_{i<j} (p_j-p_i+l_j-l_i)
//! with (a, b) = (2, 6) for r = 3 and (1, 7) for r = 5. For r = 3 the middle product is
//! the product over pairs ∏_{i<j} ∏_{k≤l_i+l_j} (p_i+p_j+k).

use exactnum::BigRational;
use num_traits::{One, Zero};
use series::{extract_leading_vandermonde, MultiPolyTrunc, TruncatedSeries};

use crate::error::PeriodError;
use crate::modeval::{FnKernel, Kernel, PrimeCtx};

fn exponents(r: usize) -> (u32, u32) {
    match r {
        3 => (2, 6),
        5 => (1, 7),
        _ => panic!("flag sums are defined for r = 3 and r = 5"),
    }
}

fn name_rank(name: &str) -> Option<usize> {
    match name {
        "V4_16" => Some(3),
        "V4_18" => Some(5),
        _ => None,
    }
}

/// Truncated univariate polynomial ∏_{k=1}^{s} (x + k), degree ≤ deg.
fn rising(s: usize, deg: usize) -> Vec<BigRational> {
    let mut u = vec![BigRational::zero(); deg + 1];
    u[0] = BigRational::one();
    for k in 1..=s {
        let kq = BigRational::from_integer((k as u64).into());
        for i in (0..=deg).rev() {
            let lower = if i > 0 { u[i - 1].clone() } else { BigRational::zero() };
            u[i] = &u[i] * &kq + lower;
        }
    }
    u
}

fn series_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_pow(a: &[BigRational], e: u32) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); a.len()];
    acc[0] = BigRational::one();
    for _ in 0..e {
        acc = series_mul(&acc, a);
    }
    acc
}

fn series_inv(a: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    let c0 = a[0].recip();
    out[0] = c0.clone();
    for k in 1..n {
        let mut s = BigRational::zero();
        for j in 1..=k {
            s += &a[j] * &out[k - j];
        }
        out[k] = -(&s * &c0);
    }
    out
}

/// Σ u_i L^i for a univariate u and a multivariate L.
fn compose(u: &[BigRational], l: &MultiPolyTrunc) -> MultiPolyTrunc {
    let (r, d) = (l.num_vars(), l.max_total_degree());
    let mut acc = MultiPolyTrunc::zero(r, d);
    let mut pw = MultiPolyTrunc::one(r, d);
    for c in u {
        if !c.is_zero() {
            acc = acc.add(&pw.scale(c));
        }
        pw = pw.mul(l);
    }
    acc
}

fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The coefficient series c_0..c_order by exact summation of multivariate summands.
/// Each t-degree batch is checked for antisymmetry before extraction.
pub fn flag_exact(r: usize, order: usize) -> Result<TruncatedSeries, PeriodError> {
    let (a, b) = exponents(r);
    let deg = r * (r - 1) / 2;
    let d = deg as u32;
    let one = BigRational::one();
    let zero = BigRational::zero();
    let var = |i: usize| MultiPolyTrunc::var(r, d, i);
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let linear_shift = |lin: &[BigRational], k: i64| MultiPolyTrunc::linear(r, d, BigRational::from_integer(k.into()), lin);
    let rising_linear = |lin: &[BigRational], s: usize, pow: u32| {
        let mut acc = MultiPolyTrunc::one(r, d);
        for k in 1..=s {
            let fct = linear_shift(lin, k as i64);
            for _ in 0..pow {
                acc = acc.mul(&fct);
            }
        }
        acc
    };
    let all = vec![one.clone(); r];
    for n in 0..=order / 2 {
        let mut batch = MultiPolyTrunc::zero(r, d);
        for l in compositions(n, r) {
            let mut term = MultiPolyTrunc::one(r, d);
            for i in 0..r {
                for j in i + 1..r {
                    let mut lin = vec![zero.clone(); r];
                    lin[j] = one.clone();
                    lin[i] = -one.clone();
                    term = term.mul(&linear_shift(&lin, l[j] as i64 - l[i] as i64));
                }
            }
            for (j, &lj) in l.iter().enumerate() {
                let bj = series_inv(&series_pow(&rising(lj, deg), b));
                term = term.mul(&compose(&bj, &var(j)));
                let mut lin = all.clone();
                lin[j] = zero.clone();
                term = term.mul(&rising_linear(&lin, n - lj, 1));
            }
            batch = batch.add(&term);
        }
        // The P-factor is common to the batch.
        let batch = batch.mul(&rising_linear(&all, n, a));
        let low_vanishes = (0..d).all(|k| batch.homogeneous_part(k).is_zero());
        if !low_vanishes || !batch.is_vandermonde_multiple() {
            return Err(PeriodError::Antisymmetry(2 * n));
        }
        coeffs[2 * n] = extract_leading_vandermonde(&batch);
    }
    Ok(TruncatedSeries::new(coeffs))
}

/// Multivariate route for the named flag builtin.
pub fn period_flag_extraction(name: &str, order: usize) -> Result<TruncatedSeries, PeriodError> {
    let r = name_rank(name).ok_or_else(|| PeriodError::UnknownBuiltin(name.to_string()))?;
    flag_exact(r, order)
}

// Modular route: p_j = ε v_j with v = (-(r-1)/2, ..., (r-1)/2). The specialized sum
// equals ε^D Δ(v) G(εv) with G symmetric, so its ε^D coefficient over Δ(v) is the answer
// and all lower coefficients vanish. With Σv = 0 the middle variable carries no ε at all.

type Ser<const L: usize> = [u64; L];

#[inline]
fn smul<const L: usize>(ctx: &PrimeCtx, a: &Ser<L>, b: &Ser<L>) -> Ser<L> {
    let mut out = [0u64; L];
    for k in 0..L {
        let mut acc: u128 = 0;
        for i in 0..=k {
            acc += a[i] as u128 * b[k - i] as u128;
        }
        out[k] = ctx.f.redc(acc);
    }
    out
}

/// a · (k + cε)
fn smul_linear<const L: usize>(ctx: &PrimeCtx, a: &Ser<L>, k: u64, c: u64) -> Ser<L> {
    let f = &ctx.f;
    let mut out = [0u64; L];
    for i in 0..L {
        out[i] = f.mul(a[i], k);
        if i > 0 {
            out[i] = f.add(out[i], f.mul(a[i - 1], c));
        }
    }
    out
}

fn sone<const L: usize>(ctx: &PrimeCtx) -> Ser<L> {
    let mut o = [0u64; L];
    o[0] = ctx.f.one();
    o
}

fn spow<const L: usize>(ctx: &PrimeCtx, a: &Ser<L>, e: u32) -> Ser<L> {
    let mut acc = sone::<L>(ctx);
    for _ in 0..e {
        acc = smul(ctx, &acc, a);
    }
    acc
}

/// In-place cyclic transform of length a.len() (a power of two dividing `m`): a[i] ← Σ_l a[l] w^{i l m / len},
/// where `roots[k] = w^k` for a primitive m-th root w.
fn ntt(f: &exactnum::modular::MontField, a: &mut [u64], roots: &[u64], m: usize) {
    let n = a.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = m / len;
        for chunk in a.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = f.mul(hi[k], roots[k * step]);
                lo[k] = f.add(u, v);
                hi[k] = f.sub(u, v);
            }
        }
        len <<= 1;
    }
}

// The sum over compositions of n of det[e_j(l_j, c)] is the x^n coefficient of det[Σ_l e_j(l, c) x^l].
// The determinant has x-degree ≤ r n, so evaluating at m > (r-1) n roots of unity isolates x^n.
fn flag_residues<const L: usize>(ctx: &PrimeCtx, r: usize, order: usize) -> Result<Vec<u64>, PeriodError> {
    let f = &ctx.f;
    let (a_pow, b_pow) = exponents(r);
    let deg = r * (r - 1) / 2;
    debug_assert_eq!(L, deg + 1);
    let nmax = order / 2;
    let half = (r as i64 - 1) / 2;
    let v: Vec<i64> = (0..r as i64).map(|j| j - half).collect();
    let mut vandermonde = 1i64;
    for i in 0..r {
        for j in i + 1..r {
            vandermonde *= v[j] - v[i];
        }
    }
    let vinv = f.inv(ctx.int(vandermonde));

    // B_j(l) = ∏_{k≤l} (k + εv_j)^{-b}, C_j(m) = ∏_{k≤m} (k - εv_j), Q_j(l, c) = (l + εv_j)^c.
    let mut bser: Vec<Vec<Ser<L>>> = Vec::with_capacity(r);
    let mut cser: Vec<Vec<Ser<L>>> = Vec::with_capacity(r);
    let mut qser: Vec<Vec<Ser<L>>> = Vec::with_capacity(r);
    for &vj in &v {
        let mut bs = vec![sone::<L>(ctx)];
        let mut cs = vec![sone::<L>(ctx)];
        let cv = ctx.int(vj);
        let cw = ctx.int(-vj);
        for k in 1..=nmax {
            let kinv = ctx.inv[k];
            let ratio = f.neg(f.mul(cv, kinv));
            let mut inv = [0u64; L];
            let mut pw = kinv;
            for s in inv.iter_mut() {
                *s = pw;
                pw = f.mul(pw, ratio);
            }
            let step = spow(ctx, &inv, b_pow);
            bs.push(smul(ctx, &bs[k - 1], &step));
            cs.push(smul_linear(ctx, &cs[k - 1], ctx.int(k as i64), cw));
        }
        let mut qs = Vec::with_capacity((nmax + 1) * r);
        for l in 0..=nmax {
            let mut q = sone::<L>(ctx);
            for _ in 0..r {
                qs.push(q);
                q = smul_linear(ctx, &q, ctx.int(l as i64), cv);
            }
        }
        bser.push(bs);
        cser.push(cs);
        qser.push(qs);
    }
    // Rows with v_j = 0 carry no ε.
    let comps: Vec<usize> = v.iter().map(|&x| if x == 0 { 1 } else { L }).collect();

    let mmax = ((r - 1) * nmax + 1).next_power_of_two().max(2);
    let log = mmax.trailing_zeros();
    let w = f.root_of_unity(log).ok_or_else(|| PeriodError::Spec(format!("no 2^{log}-th root of unity")))?;
    let mut roots = Vec::with_capacity(mmax / 2);
    let mut pw = f.one();
    for _ in 0..mmax / 2 {
        roots.push(pw);
        pw = f.mul(pw, w);
    }

    let full = (1usize << r) - 1;
    let layers: Vec<Vec<usize>> =
        (0..=r).map(|j| (0..=full).filter(|m| m.count_ones() as usize == j).collect()).collect();
    let sign = |mask: usize, c: usize| (mask >> (c + 1)).count_ones() % 2 == 1;
    let zero = [0u64; L];
    let mut out = vec![0u64; order + 1];
    let mut state = vec![zero; full + 1];
    for n in 0..=nmax {
        let m = ((r - 1) * n + 1).next_power_of_two().max(2);
        // data[((j r + c) L + k) m + i]: component k of column (j, c) at the i-th point.
        let mut data = vec![0u64; r * r * L * m];
        for j in 0..r {
            for l in 0..=n {
                let e = smul(ctx, &bser[j][l], &cser[j][n - l]);
                for c in 0..r {
                    let x = smul(ctx, &e, &qser[j][l * r + c]);
                    for k in 0..comps[j] {
                        data[((j * r + c) * L + k) * m + l] = x[k];
                    }
                }
            }
            for c in 0..r {
                for k in 0..comps[j] {
                    let at = ((j * r + c) * L + k) * m;
                    ntt(f, &mut data[at..at + m], &roots, mmax);
                }
            }
        }
        let stride = mmax / m;
        // ω^{-n} for ω = w^stride
        let back = f.pow(f.inv(f.pow(w, stride as u64)), n as u64);
        let mut twist = f.one();
        let mut acc = zero;
        let mut pts = vec![zero; m * r * r];
        for col in 0..r * r {
            for k in 0..comps[col / r] {
                let src = &data[(col * L + k) * m..(col * L + k + 1) * m];
                for (i, &x) in src.iter().enumerate() {
                    pts[i * r * r + col][k] = x;
                }
            }
        }
        for i in 0..m {
            let here = &pts[i * r * r..(i + 1) * r * r];
            let cell = |j: usize, c: usize| -> &Ser<L> { &here[j * r + c] };
            for c in 0..r {
                state[1 << c] = *cell(0, c);
            }
            for j in 1..r {
                for &mask in &layers[j + 1] {
                    state[mask] = zero;
                }
                for &mask in &layers[j] {
                    for c in (0..r).filter(|&c| mask & (1 << c) == 0) {
                        let y = cell(j, c);
                        let x = if comps[j] == 1 {
                            let mut o = [0u64; L];
                            for k in 0..L {
                                o[k] = f.mul(state[mask][k], y[0]);
                            }
                            o
                        } else {
                            smul(ctx, &state[mask], y)
                        };
                        let t = &mut state[mask | (1 << c)];
                        for k in 0..L {
                            t[k] = if sign(mask, c) { f.sub(t[k], x[k]) } else { f.add(t[k], x[k]) };
                        }
                    }
                }
            }
            for k in 0..L {
                acc[k] = f.add(acc[k], f.mul(state[full][k], twist));
            }
            twist = f.mul(twist, back);
        }
        let minv = f.inv(ctx.int(m as i64));
        for x in acc.iter_mut() {
            *x = f.mul(*x, minv);
        }
        // ∏_{k≤n} (k + εΣv)^a with Σv = 0.
        let a_n = f.pow(ctx.fact[n], a_pow as u64);
        if acc[..deg].iter().any(|&x| x != 0) {
            return Err(PeriodError::Antisymmetry(2 * n));
        }
        out[2 * n] = f.mul(f.mul(acc[deg], a_n), vinv);
    }
    Ok(out)
}

pub(crate) fn flag_kernel(r: usize, order: usize) -> Box<dyn Kernel> {
    Box::new(FnKernel::new(order, order + 8, move |ctx, order| match r {
        3 => flag_residues::<4>(ctx, 3, order),
        5 => flag_residues::<11>(ctx, 5, order),
        _ => Err(PeriodError::UnknownBuiltin(format!("flag sum with r = {r}"))),
    }))
}
