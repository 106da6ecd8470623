//! Factorization over Q: square-free decomposition, Cantor-Zassenhaus modulo a small
//! prime, Hensel lifting and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ExactError;
use crate::poly::UniPoly;
use crate::rational::BigRational;

/// `content * prod(factor^multiplicity) == p`, factors monic and irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigRational,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

pub fn factor_over_q(p: &UniPoly) -> Result<Factorization, ExactError> {
    let lc = p.lc().ok_or(ExactError::ZeroPolynomial)?.clone();
    let mut factors = Vec::new();
    for (part, mult) in p.square_free() {
        for f in factor_square_free(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { content: lc, factors })
}

/// Rational roots with multiplicities, ascending.
pub fn rational_roots(p: &UniPoly) -> Vec<(BigRational, usize)> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<(BigRational, usize)> = factor_over_q(p)
        .unwrap()
        .factors
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, m)| (-f.coeff(0), m))
        .collect();
    out.sort();
    out
}

/// Irreducible monic factors of a square-free polynomial.
fn factor_square_free(f: &UniPoly) -> Vec<UniPoly> {
    let ints = f.to_primitive_integers();
    let n = ints.len() - 1;
    if n <= 1 {
        return vec![f.monic()];
    }
    // Strip factors of x so the constant term is nonzero.
    let mut out = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
    if shift > 0 {
        out.push(UniPoly::x());
    }
    let g: Vec<BigInt> = ints[shift..].to_vec();
    if g.len() > 1 {
        for h in zassenhaus(&g) {
            out.push(UniPoly::from_bigints(&h).monic());
        }
    }
    out
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Factor a primitive square-free integer polynomial with positive leading coefficient
/// into primitive irreducible integer polynomials.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // Pick the prime giving the fewest modular factors among a handful of candidates.
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        let fp = fp_monic(&fp, p);
        if fp_deg(&fp_gcd(&fp, &fp_derivative(&fp, p), p)) != Some(0) {
            continue;
        }
        let facs = fp_factor(&fp, p);
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, modular) = best.expect("no suitable prime for factorization");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Coefficient bound for lc * g with g a factor: 2^n * |f|_2 * |lc|.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32) * lc.abs();
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= &bound * 2u32 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f, lifted, &pk)
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, p a small odd prime; ascending coefficient vectors.

fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    fp_trim(&mut v);
    v
}

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_deg(v: &[u64]) -> Option<usize> {
    v.len().checked_sub(1)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_monic(a: &[u64], p: u64) -> Vec<u64> {
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|c| c * inv % p).collect()
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut v: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut v);
    v
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut v);
    v
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        q[i] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * y % p) % p;
            }
        }
    }
    r.truncate(db);
    fp_trim(&mut r);
    fp_trim(&mut q);
    (q, r)
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    fp_divrem(a, b, p).1
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        fp_monic(&a, p)
    }
}

fn fp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect();
    fp_trim(&mut v);
    v
}

fn fp_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_rem(&fp_mul(&r, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Extended Euclid: (s, t) with s a + t b = 1 (a, b coprime).
fn fp_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(r0[0], p);
    let sc = |v: Vec<u64>| v.into_iter().map(|c| c * inv % p).collect::<Vec<_>>();
    (sc(s0), sc(t0))
}

/// Monic irreducible factors of a monic square-free polynomial over F_p.
fn fp_factor(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    // Distinct-degree factorization.
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 1;
    while fp_deg(&rest).unwrap_or(0) >= 2 * d {
        h = fp_powmod(&h, p as u128, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if fp_deg(&g).unwrap_or(0) > 0 {
            equal_degree(&g, d, p, &mut rng, &mut out);
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_rem(&h, &rest, p);
        }
        d += 1;
    }
    if fp_deg(&rest).unwrap_or(0) > 0 {
        out.push(rest);
    }
    out.sort();
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = fp_deg(g).unwrap();
    if n == d {
        out.push(g.to_vec());
        return;
    }
    loop {
        let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp_trim(&mut a);
        if fp_deg(&a).unwrap_or(0) < 1 {
            continue;
        }
        // a^{(p^d - 1)/2} = (a * a^p * ... * a^{p^{d-1}})^{(p-1)/2}
        let mut norm = vec![1u64];
        let mut frob = fp_rem(&a, g, p);
        for _ in 0..d {
            norm = fp_rem(&fp_mul(&norm, &frob, p), g, p);
            frob = fp_powmod(&frob, p as u128, g, p);
        }
        let b = fp_powmod(&norm, ((p - 1) / 2) as u128, g, p);
        let c = fp_gcd(&fp_sub(&b, &[1], p), g, p);
        let dc = fp_deg(&c).unwrap_or(0);
        if dc > 0 && dc < n {
            let q = fp_divrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&fp_monic(&q, p), d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo m.

fn zmod(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn to_small(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut r: Vec<u64> = v.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    fp_trim(&mut r);
    r
}

/// Lift the monic modular factors of f (f ≡ lc * prod) to monic factors modulo p^k.
fn hensel_lift(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pk = BigInt::from(p).pow(k);
    let lc = f.last().unwrap().clone();
    let lc_inv = lc.modpow(&(&pk - &pk / BigInt::from(p) - 1u32), &pk); // lc^{phi(p^k)-1}
    let monic_f = zmod(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &pk);
    lift_tree(&monic_f, factors, p, k)
}

fn lift_tree(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let (a, b) = factors.split_at(factors.len() / 2);
    let g0 = a.iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
    let h0 = b.iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = lift_tree(&g, a, p, k);
    out.extend(lift_tree(&h, b, p, k));
    out
}

/// Linear Hensel lifting of a monic f ≡ g h (mod p) to f ≡ g h (mod p^k), g, h monic.
fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = fp_xgcd(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = to_big(g0);
    let mut h = to_big(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = zsub(f, &zmul(&g, &h));
        let e_over: Vec<BigInt> = err.iter().map(|c| c / &pj).collect();
        let e = to_small(&e_over, p);
        if !e.is_empty() {
            let (q, dg) = fp_divrem(&fp_mul(&e, &t, p), g0, p);
            let dh = fp_rem(&fp_mul_add(&e, &s, &q, h0, p), h0, p);
            add_scaled(&mut g, &dg, &pj);
            add_scaled(&mut h, &dh, &pj);
        }
        pj *= &pb;
    }
    (zmod(&g, &pj), zmod(&h, &pj))
}

fn fp_mul_add(e: &[u64], s: &[u64], q: &[u64], h0: &[u64], p: u64) -> Vec<u64> {
    let a = fp_mul(e, s, p);
    let b = fp_mul(q, h0, p);
    let n = a.len().max(b.len());
    let mut v: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    fp_trim(&mut v);
    v
}

fn add_scaled(g: &mut Vec<BigInt>, d: &[u64], scale: &BigInt) {
    if g.len() < d.len() {
        g.resize(d.len(), BigInt::zero());
    }
    for (i, &c) in d.iter().enumerate() {
        g[i] += scale * BigInt::from(c);
    }
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    v.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = v;
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if v.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let g = g * sign;
    v.into_iter().map(|c| c / &g).collect()
}

/// Exact division over Z; `None` if b does not divide a.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

/// Combine lifted factors into true factors, trying subsets of increasing size.
fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        let lc = f.last().unwrap().clone();
        for subset in combinations(lifted.len(), size) {
            // Cheap test on constant terms before forming the product.
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(pk));
            let c0 = symmetric(&[c0], pk).remove(0);
            if c0.is_zero() || !(&f[0] * &lc % &c0).is_zero() {
                continue;
            }
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| zmod(&zmul(&acc, &lifted[i]), pk));
            let g = primitive(symmetric(&prod, pk));
            if let Some(q) = zdiv_exact(&f, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => size += 1,
        }
    }
    out.push(primitive(f));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Rightmost position that can still advance.
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
