//! Closed-form period sums, summed term by term modulo a prime.

use exactnum::BigRational;
use num_traits::Zero;

use crate::modeval::{exp_neg, FnKernel, Kernel, PrimeCtx, ProductKernel};

/// H_m = 1 + 1/2 + ... + 1/m.
pub fn harmonic(m: u64) -> BigRational {
    let mut h = BigRational::zero();
    for k in 1..=m {
        h += BigRational::new(1.into(), k.into());
    }
    h
}

fn table(order: usize) -> usize {
    3 * order + 8
}

fn kernel<F>(order: usize, f: F) -> Box<dyn Kernel>
where
    F: Fn(&PrimeCtx, &mut [u64]) + Send + Sync + 'static,
{
    Box::new(FnKernel::new(order, table(order), move |ctx, order| {
        let mut out = vec![0; order + 1];
        f(ctx, &mut out);
        Ok(out)
    }))
}

/// Σ_d term(d) t^{step·d}.
fn single<F>(order: usize, step: usize, term: F) -> Box<dyn Kernel>
where
    F: Fn(&PrimeCtx, usize) -> u64 + Send + Sync + 'static,
{
    kernel(order, move |ctx, out| {
        for d in 0..=out.len().saturating_sub(1) / step {
            out[d * step] = term(ctx, d);
        }
    })
}

/// Σ_{l,m} term(l,m) t^{step·(l+m)}, any pair may return zero.
fn pair<F>(order: usize, step: (usize, usize), term: F) -> Box<dyn Kernel>
where
    F: Fn(&PrimeCtx, usize, usize) -> u64 + Send + Sync + 'static,
{
    kernel(order, move |ctx, out| {
        let m_top = out.len() - 1;
        for l in 0..=m_top / step.0 {
            for m in 0..=(m_top - step.0 * l) / step.1 {
                let e = step.0 * l + step.1 * m;
                out[e] = ctx.f.add(out[e], term(ctx, l, m));
            }
        }
    })
}

fn prod(ctx: &PrimeCtx, xs: &[u64]) -> u64 {
    xs.iter().fold(ctx.f.one(), |a, &b| ctx.f.mul(a, b))
}

fn pw(ctx: &PrimeCtx, x: u64, e: u64) -> u64 {
    ctx.f.pow(x, e)
}

/// 1 + c·(m-l)·h
fn correction(ctx: &PrimeCtx, c: i64, l: usize, m: usize, h: u64) -> u64 {
    let f = &ctx.f;
    f.add(f.one(), f.mul(ctx.int(c * (m as i64 - l as i64)), h))
}

/// The Gr(2,5)-type double sum with exponents (a, b) of the factorials and the
/// harmonic correction 1 - c(m-l)H_m.
fn grassmannian(order: usize, step: usize, lm2: u64, den: u64, c: i64, two: bool) -> Box<dyn Kernel> {
    pair(order, (step, step), move |ctx, l, m| {
        let (fa, ifa) = (&ctx.fact, &ctx.inv_fact);
        let mut t = pw(ctx, fa[l + m], lm2);
        if two {
            t = ctx.f.mul(t, fa[2 * l + 2 * m]);
        }
        let t = prod(ctx, &[t, pw(ctx, ifa[l], den), pw(ctx, ifa[m], den), correction(ctx, -c, l, m, ctx.harmonic[m])]);
        ctx.signed(l + m, t)
    })
}

pub(crate) fn p1(order: usize) -> Box<dyn Kernel> {
    single(order, 2, |c, d| pw(c, c.inv_fact[d], 2))
}

pub(crate) fn projective(n: u64, order: usize) -> Box<dyn Kernel> {
    single(order, n as usize + 1, move |c, d| pw(c, c.inv_fact[d], n + 1))
}

fn b3_5(order: usize) -> Box<dyn Kernel> {
    pair(order, (2, 2), |ctx, m, n| {
        let (fa, ifa) = (&ctx.fact, &ctx.inv_fact);
        let t = prod(
            ctx,
            &[pw(ctx, fa[m + n], 3), pw(ctx, ifa[m], 5), pw(ctx, ifa[n], 5), correction(ctx, -5, m, n, ctx.harmonic[n])],
        );
        ctx.signed(m + n, t)
    })
}

fn w3(order: usize) -> Box<dyn Kernel> {
    pair(order, (2, 2), |c, m, n| prod(c, &[c.fact[m + n], pw(c, c.inv_fact[m], 3), pw(c, c.inv_fact[n], 3)]))
}

fn mm2_35(order: usize) -> Box<dyn Kernel> {
    pair(order, (2, 2), |c, m, n| {
        if n < m {
            return 0;
        }
        prod(c, &[pw(c, c.inv_fact[m], 3), c.inv_fact[n], c.inv_fact[n - m]])
    })
}

fn times_p1(order: usize, k: Box<dyn Kernel>) -> Box<dyn Kernel> {
    Box::new(ProductKernel::new(vec![p1(order), k], order))
}

fn mw4_11(order: usize) -> Box<dyn Kernel> {
    kernel(order, |ctx, out| {
        let f = &ctx.f;
        let (fa, ifa, h) = (&ctx.fact, &ctx.inv_fact, &ctx.harmonic);
        let i4 = ctx.powers(ifa, 4);
        let s_max = (out.len() - 1) / 2;
        for l in 0..=s_max {
            for m in 0..=s_max - l {
                let base = f.mul(fa[l + m], f.mul(i4[l], i4[m]));
                // First part: n ≥ max(l, m).
                for n in l.max(m)..=s_max - l - m {
                    let corr = f.sub(h[n - m], f.mul(ctx.int(4), h[m]));
                    let corr = correction(ctx, 1, l, m, corr);
                    let t = prod(ctx, &[base, ifa[n - l], ifa[n - m], corr]);
                    let e = 2 * (l + m + n);
                    out[e] = f.add(out[e], ctx.signed(l + m, t));
                }
                // Second part: m > l, l ≤ n < m.
                if m > l {
                    let w = f.mul(base, ctx.int((m - l) as i64));
                    for n in l..m.min(s_max + 1 - l - m) {
                        let t = prod(ctx, &[w, fa[m - n - 1], ifa[n - l]]);
                        let e = 2 * (l + m + n);
                        out[e] = f.add(out[e], ctx.signed(l + n, t));
                    }
                }
            }
        }
    })
}

/// c_{l,m} modulo the context prime.
pub(crate) fn strangeway_c_mod(ctx: &PrimeCtx, l: usize, m: usize) -> u64 {
    let f = &ctx.f;
    let (fa, ifa, h) = (&ctx.fact, &ctx.inv_fact, &ctx.harmonic);
    let mut acc = 0;
    for i in 0..=l {
        for j in 0..=m {
            let corr = f.sub(h[i + m - j], f.mul(ctx.int(4), h[i]));
            let corr = f.add(f.one(), f.mul(ctx.int(2 * i as i64 - l as i64), corr));
            let t = prod(
                ctx,
                &[
                    fa[m + l - i - j],
                    fa[i + m - j],
                    fa[m + l - j],
                    pw(ctx, ifa[l - i], 4),
                    pw(ctx, ifa[i], 4),
                    pw(ctx, ifa[m - j], 4),
                    ifa[j],
                    ifa[m],
                    pw(ctx, ifa[l], 4),
                    corr,
                ],
            );
            acc = f.add(acc, ctx.signed(j + l, t));
        }
    }
    acc
}

pub(crate) fn strangeway(k: u8, order: usize) -> Box<dyn Kernel> {
    kernel(order, move |ctx, out| {
        let f = &ctx.f;
        let top = out.len() - 1;
        // t-exponent and prefactor of c_{l,m} for each family.
        let (a, b) = match k {
            1 => (1, 2),
            2 => (2, 1),
            _ => (1, 1),
        };
        for l in 0..=top / a {
            for m in 0..=(top - a * l) / b {
                let w = match k {
                    1 => pw(ctx, ctx.fact[l], 5),
                    2 => f.mul(pw(ctx, ctx.fact[l], 4), ctx.fact[m]),
                    _ => f.mul(pw(ctx, ctx.fact[l], 4), ctx.fact[l + m]),
                };
                let e = a * l + b * m;
                out[e] = f.add(out[e], f.mul(w, strangeway_c_mod(ctx, l, m)));
            }
        }
        if k != 2 {
            let ex = exp_neg(ctx, f.one(), top);
            let prod = crate::modeval::mul_trunc(f, out, &ex, top);
            out.copy_from_slice(&prod);
        }
    })
}

/// The printed closed form of a builtin, if it has one.
pub(crate) fn closed_kernel(name: &str, order: usize) -> Option<Box<dyn Kernel>> {
    let o = order;
    Some(match name {
        "P1" => p1(o),
        "P2" => projective(2, o),
        "P3" => projective(3, o),
        "P4" => projective(4, o),
        "Q4" => single(o, 4, |c, d| c.f.mul(c.fact[2 * d], pw(c, c.inv_fact[d], 6))),
        "FI4_1" => single(o, 3, |c, d| prod(c, &[c.fact[6 * d], c.inv_fact[3 * d], c.inv_fact[2 * d], pw(c, c.inv_fact[d], 4)])),
        "FI4_2" => single(o, 3, |c, d| prod(c, &[c.fact[4 * d], c.inv_fact[2 * d], pw(c, c.inv_fact[d], 5)])),
        "FI4_3" => single(o, 3, |c, d| c.f.mul(c.fact[3 * d], pw(c, c.inv_fact[d], 6))),
        "FI4_4" => single(o, 3, |c, d| c.f.mul(pw(c, c.fact[2 * d], 2), pw(c, c.inv_fact[d], 7))),
        "FI4_5" | "V4_5" => grassmannian(o, 3, 2, 5, 5, false),
        "FI4_6" => pair(o, (3, 3), |c, l, m| c.f.mul(pw(c, c.inv_fact[l], 3), pw(c, c.inv_fact[m], 3))),
        "V4_2" => single(o, 2, |c, d| prod(c, &[c.fact[6 * d], pw(c, c.inv_fact[d], 5), c.inv_fact[3 * d]])),
        "V4_4" => single(o, 2, |c, d| c.f.mul(c.fact[4 * d], pw(c, c.inv_fact[d], 6))),
        "V4_6" => single(o, 2, |c, d| prod(c, &[c.fact[2 * d], c.fact[3 * d], pw(c, c.inv_fact[d], 7)])),
        "V4_8" => single(o, 2, |c, d| c.f.mul(pw(c, c.fact[2 * d], 3), pw(c, c.inv_fact[d], 8))),
        "V4_10" => grassmannian(o, 2, 1, 5, 5, true),
        "V4_12" => pair(o, (2, 2), |c, l, m| {
            let f = &c.f;
            let h = &c.harmonic;
            let hs = f.sub(f.add(h[2 * l + m], f.mul(c.int(2), h[l + 2 * m])), f.mul(c.int(5), h[m]));
            let t = prod(
                c,
                &[c.fact[2 * l + m], c.fact[l + 2 * m], pw(c, c.inv_fact[l], 5), pw(c, c.inv_fact[m], 5), correction(c, 1, l, m, hs)],
            );
            c.signed(l + m, t)
        }),
        "V4_14" => grassmannian(o, 2, 4, 6, 6, false),
        "V4_16" => crate::flag::flag_kernel(3, o),
        "V4_18" => crate::flag::flag_kernel(5, o),
        "B3_1" => single(o, 2, |c, d| prod(c, &[c.fact[6 * d], pw(c, c.inv_fact[d], 3), c.inv_fact[2 * d], c.inv_fact[3 * d]])),
        "B3_2" => single(o, 2, |c, d| prod(c, &[c.fact[4 * d], pw(c, c.inv_fact[d], 4), c.inv_fact[2 * d]])),
        "B3_3" => single(o, 2, |c, d| c.f.mul(c.fact[3 * d], pw(c, c.inv_fact[d], 5))),
        "B3_4" => single(o, 2, |c, d| c.f.mul(pw(c, c.fact[2 * d], 2), pw(c, c.inv_fact[d], 6))),
        "B3_5" => b3_5(o),
        "MM2_32" | "W3" => w3(o),
        "MM2_35" | "B3_7" => mm2_35(o),
        "MW4_1" => times_p1(o, closed_kernel("B3_1", o)?),
        "MW4_2" => times_p1(o, closed_kernel("B3_2", o)?),
        "MW4_3" => times_p1(o, closed_kernel("B3_3", o)?),
        "MW4_4" => kernel(o, |c, out| {
            let top = (out.len() - 1) / 2;
            for m in 0..=top {
                for l in 0..=m {
                    let t = prod(c, &[c.fact[2 * m], pw(c, c.inv_fact[l], 3), c.inv_fact[m], pw(c, c.inv_fact[m - l], 3)]);
                    out[2 * m] = c.f.add(out[2 * m], t);
                }
            }
        }),
        "MW4_5" => pair(o, (2, 2), |c, l, m| prod(c, &[c.fact[l + 2 * m], pw(c, c.inv_fact[l], 3), pw(c, c.inv_fact[m], 4)])),
        "MW4_6" => times_p1(o, closed_kernel("B3_4", o)?),
        "MW4_7" => pair(o, (2, 2), |c, l, m| prod(c, &[pw(c, c.fact[l + m], 2), pw(c, c.inv_fact[l], 4), pw(c, c.inv_fact[m], 4)])),
        "MW4_8" => {
            pair(o, (2, 2), |c, l, m| prod(c, &[c.fact[l + m], c.fact[2 * m], pw(c, c.inv_fact[l], 3), pw(c, c.inv_fact[m], 5)]))
        }
        "MW4_9" => times_p1(o, b3_5(o)),
        "MW4_10" => pair(o, (2, 2), |c, l, m| {
            if m < l {
                return 0;
            }
            prod(c, &[c.fact[2 * m], pw(c, c.inv_fact[l], 3), c.inv_fact[m - l], pw(c, c.inv_fact[m], 3)])
        }),
        "MW4_11" => mw4_11(o),
        "MW4_12" => pair(o, (2, 2), |c, l, m| {
            if m < l {
                return 0;
            }
            prod(c, &[c.fact[l + m], pw(c, c.inv_fact[l], 4), c.inv_fact[m - l], pw(c, c.inv_fact[m], 2)])
        }),
        "MW4_13" => pair(o, (2, 2), |c, l, m| {
            if m < l {
                return 0;
            }
            prod(c, &[c.fact[2 * l], pw(c, c.inv_fact[l], 5), c.inv_fact[m], c.inv_fact[m - l]])
        }),
        "MW4_14" => pair(o, (2, 4), |c, l, m| c.f.mul(pw(c, c.inv_fact[l], 2), pw(c, c.inv_fact[m], 4))),
        "MW4_15" => pair(o, (2, 2), |c, l, m| {
            if m < 2 * l {
                return 0;
            }
            prod(c, &[pw(c, c.inv_fact[l], 4), c.inv_fact[m], c.inv_fact[m - 2 * l]])
        }),
        "MW4_16" => times_p1(o, w3(o)),
        "MW4_17" => times_p1(o, mm2_35(o)),
        "MW4_18" => Box::new(ProductKernel::new((0..4).map(|_| p1(o)).collect(), o)),
        "Str1" => strangeway(1, o),
        "Str2" => strangeway(2, o),
        "Str3" => strangeway(3, o),
        _ => return None,
    })
}
