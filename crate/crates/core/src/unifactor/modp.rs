//! Polynomials over a prime field `F_p` with `p < 2^31`.
//!
//! Only what the Zassenhaus factorizer needs: Euclidean arithmetic,
//! distinct-degree and equal-degree (Cantor–Zassenhaus) factorization.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::IntPoly;

/// Dense polynomial over `F_p`, ascending, no trailing zeros.
pub type ZpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Zp {
    pub p: u64,
}

fn trim(mut a: ZpPoly) -> ZpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Zp { p }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[cfg(test)]
    fn addm(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn subm(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.powm(a, self.p - 2)
    }

    fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn reduce_int(&self, c: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((c % &p) + &p) % &p;
        r.to_u64().unwrap()
    }

    pub fn from_int_poly(&self, f: &IntPoly) -> ZpPoly {
        trim(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    #[cfg(test)]
    pub fn add(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> ZpPoly {
        trim(a.iter().map(|&x| self.mulm(x, c)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> ZpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (ZpPoly, ZpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let db = b.len() - 1;
        let lc_inv = self.inv(*b.last().unwrap());
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - db];
        for k in (0..quot.len()).rev() {
            let top = rem[k + db];
            if top == 0 {
                continue;
            }
            let qk = self.mulm(top, lc_inv);
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] = self.subm(rem[k + j], self.mulm(qk, bj));
            }
            quot[k] = qk;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> ZpPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (ZpPoly, ZpPoly, ZpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().unwrap());
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> ZpPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// `base^exp mod modulus`.
    pub fn powmod(&self, base: &[u64], exp: &BigUint, modulus: &[u64]) -> ZpPoly {
        let mut acc = vec![1u64];
        let base = self.rem(base, modulus);
        for i in (0..exp.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), modulus);
            if exp.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), modulus);
            }
        }
        acc
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g_d, d)` where `g_d` is the product of all irreducible factors
    /// of degree `d`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(ZpPoly, usize)> {
        let x = vec![0u64, 1];
        let p = BigUint::from(self.p);
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, &p, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        if rest.len() > 1 {
            let deg = rest.len() - 1;
            out.push((self.monic(&rest), deg));
        }
        out
    }

    /// Number of irreducible factors of a monic squarefree polynomial.
    pub fn count_factors(&self, f: &[u64]) -> usize {
        self.distinct_degree(f)
            .iter()
            .map(|(g, d)| (g.len() - 1) / d)
            .sum()
    }

    /// Split a product of distinct irreducibles of degree `d`.
    fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ZpPoly>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1usize;
        loop {
            let a: ZpPoly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let mut g = self.gcd(&a, f);
            if g.len() == 1 {
                let b = self.sub(&self.powmod(&a, &exp, f), &[1]);
                g = self.gcd(&b, f);
            }
            if g.len() > 1 && g.len() < f.len() {
                let other = self.divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&other), d, rng, out);
                return;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted by degree then coefficients.
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<ZpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// Primes in increasing order starting from `start`.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(3)..).filter(|&n| is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut i = 3;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

/// Lift a residue to the symmetric range `(-m/2, m/2]`.
pub fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c % m;
    if r < BigInt::zero() {
        r += m;
    }
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}
