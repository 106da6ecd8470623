//! Word-size prime fields, Chinese remaindering and rational reconstruction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::BigRational;

fn mul_mod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u128(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u128(r, a, m);
        }
        a = mul_mod_u128(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Two-adic valuation shared by every prime of [`large_primes`].
pub const TWO_ADICITY: u32 = 24;

/// Primes p < 2^60 with p ≡ 1 mod 2^24, descending from the top. Products of up to
/// sixteen residues fit a single Montgomery reduction, and every such field has roots
/// of unity of order 2^24.
pub fn large_primes(count: usize) -> Vec<u64> {
    large_primes_from(0, count)
}

/// The primes of [`large_primes`] with indices `skip..skip+count`.
pub fn large_primes_from(skip: usize, count: usize) -> Vec<u64> {
    let step = 1u64 << TWO_ADICITY;
    let mut out = Vec::with_capacity(count);
    let mut n: u64 = ((1u64 << 60) - 1) / step * step + 1;
    let mut seen = 0;
    while out.len() < count {
        if is_prime_u64(n) {
            if seen >= skip {
                out.push(n);
            }
            seen += 1;
        }
        n -= step;
    }
    out
}

/// Arithmetic modulo an odd prime p < 2^60 in Montgomery form.
#[derive(Clone, Copy, Debug)]
pub struct MontField {
    p: u64,
    pinv: u64, // -p^{-1} mod 2^64
    r2: u64,   // 2^128 mod p
}

impl MontField {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1u64 << 60));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = mul_mod_u128(r, r, p);
        MontField { p, pinv: inv.wrapping_neg(), r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Montgomery reduction of t < p * 2^64.
    #[inline(always)]
    pub fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        self.from_u64(1)
    }

    pub fn from_u64(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let v = self.from_u64(a.unsigned_abs());
        if a < 0 {
            self.neg(v)
        } else {
            v
        }
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        self.from_u64(r)
    }

    /// `None` when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let d = self.from_bigint(q.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(q.numer()), self.inv(d)))
    }

    /// Plain residue in [0, p).
    pub fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// A primitive 2^k-th root of unity (Montgomery form), if p - 1 is divisible by 2^k.
    pub fn root_of_unity(&self, k: u32) -> Option<u64> {
        let p = self.modulus();
        if k >= 64 || (p - 1) % (1u64 << k) != 0 {
            return None;
        }
        let e = (p - 1) >> k;
        (2..).map(|g| self.pow(self.from_u64(g), e)).find(|&w| k == 0 || self.pow(w, 1 << (k - 1)) != self.one())
    }
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt { modulus: BigInt::one(), values: vec![BigInt::zero(); len] }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Add residues (plain, not Montgomery form) modulo a new prime p.
    pub fn push(&mut self, p: u64, residues: &[u64]) {
        self.push_tracked(p, residues);
    }

    /// As [`Crt::push`]; entry i of the result says whether the symmetric lift of
    /// value i survived the new prime unchanged.
    pub fn push_tracked(&mut self, p: u64, residues: &[u64]) -> Vec<bool> {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let m_mod_p = (&self.modulus % &pb).to_u64().unwrap();
        let minv = pow_mod_u128(m_mod_p, p - 2, p);
        let half: BigInt = &self.modulus >> 1;
        let mut unchanged = Vec::with_capacity(residues.len());
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let v_mod_p = (&*v % &pb).to_u64().unwrap();
            let diff = (r + p - v_mod_p) % p;
            let k = mul_mod_u128(diff, minv, p);
            let upper = *v > half;
            unchanged.push((k == 0 && !upper) || (k == p - 1 && upper));
            if k != 0 {
                *v += &self.modulus * BigInt::from(k);
            }
        }
        self.modulus *= pb;
        unchanged
    }

    /// Symmetric-range integer lift of every value.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.values
            .iter()
            .map(|v| if v > &half { v - &self.modulus } else { v.clone() })
            .collect()
    }

    pub fn rational(&self) -> Option<Vec<BigRational>> {
        self.values.iter().map(|v| rational_reconstruct(v, &self.modulus)).collect()
    }
}

/// Wang's rational reconstruction: n/d ≡ a (mod m) with |n|, d <= sqrt(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    let half: BigInt = m >> 1;
    let bound = half.sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(n, d))
}

/// Residues of consecutive small integers' inverses, factorials and inverse factorials.
pub struct FactorialTable {
    pub fact: Vec<u64>,
    pub inv_fact: Vec<u64>,
    pub inv: Vec<u64>,
}

impl FactorialTable {
    pub fn new(f: &MontField, n: usize) -> Self {
        let mut fact = vec![f.one(); n + 1];
        for k in 1..=n {
            fact[k] = f.mul(fact[k - 1], f.from_u64(k as u64));
        }
        let mut inv_fact = vec![f.one(); n + 1];
        inv_fact[n] = f.inv(fact[n]);
        for k in (1..=n).rev() {
            inv_fact[k - 1] = f.mul(inv_fact[k], f.from_u64(k as u64));
        }
        let mut inv = vec![0; n + 1];
        for k in 1..=n {
            inv[k] = f.mul(inv_fact[k], fact[k - 1]);
        }
        FactorialTable { fact, inv_fact, inv }
    }
}
