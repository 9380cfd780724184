//! Factorization of squarefree primitive polynomials in `Z[x]`:
//! modular factorization, quadratic Hensel lifting, subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{primes_from, symmetric, Zp, ZpPoly};
use crate::arith::IntPoly;

const LUCKY_PRIMES: usize = 5;
const RNG_SEED: u64 = 0x5eed_fac7;

/// Polynomial arithmetic in `(Z/m)[x]`, residues kept in `[0, m)`.
struct ModM<'a> {
    m: &'a BigInt,
}

type MPoly = Vec<BigInt>;

impl ModM<'_> {
    fn norm(&self, mut a: MPoly) -> MPoly {
        for c in a.iter_mut() {
            *c = c.mod_floor(self.m);
        }
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> MPoly {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        self.norm(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> MPoly {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        self.norm(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> MPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.norm(out)
    }

    /// Division by a monic polynomial.
    fn divrem_monic(&self, a: &[BigInt], b: &[BigInt]) -> (MPoly, MPoly) {
        if a.len() < b.len() {
            return (Vec::new(), self.norm(a.to_vec()));
        }
        let db = b.len() - 1;
        let mut rem = a.to_vec();
        let mut quot = vec![BigInt::zero(); a.len() - db];
        for k in (0..quot.len()).rev() {
            let qk = rem[k + db].mod_floor(self.m);
            if qk.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &qk * bj;
            }
            quot[k] = qk;
        }
        rem.truncate(db);
        (self.norm(quot), self.norm(rem))
    }
}

fn to_big(a: &ZpPoly) -> MPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step modulo `m -> m^2`.
///
/// Given `f ≡ g h`, `s g + t h ≡ 1 (mod m)` with `g, h` monic, returns the
/// lifted `(g, h, s, t)` modulo `m^2`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (MPoly, MPoly, MPoly, MPoly) {
    let r = ModM { m: m2 };
    let e = r.sub(f, &r.mul(g, h));
    let (q, rem) = r.divrem_monic(&r.mul(s, &e), h);
    let g1 = r.add(g, &r.add(&r.mul(t, &e), &r.mul(&q, g)));
    let h1 = r.add(h, &rem);
    let b = r.sub(&r.add(&r.mul(s, &g1), &r.mul(t, &h1)), &[BigInt::one()]);
    let (c, d) = r.divrem_monic(&r.mul(s, &b), &h1);
    let s1 = r.sub(s, &d);
    let t1 = r.sub(&r.sub(t, &r.mul(t, &b)), &r.mul(&c, &g1));
    (g1, h1, s1, t1)
}

/// Lift `f ≡ g h (mod p)` to modulus `modulus = p^(2^j)`.
fn hensel_lift(zp: &Zp, f: &[BigInt], g: &ZpPoly, h: &ZpPoly, modulus: &BigInt) -> (MPoly, MPoly) {
    let (_, s, t) = zp.ext_gcd(g, h);
    let (mut g, mut h, mut s, mut t) = (to_big(g), to_big(h), to_big(&s), to_big(&t));
    let mut m = BigInt::from(zp.p);
    while &m < modulus {
        m = &m * &m;
        let fm = ModM { m: &m }.norm(f.to_vec());
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m);
    }
    (g, h)
}

/// Lift every modular factor of the monic image of `f`.
fn multi_lift(zp: &Zp, f_monic: &[BigInt], factors: &[ZpPoly], modulus: &BigInt) -> Vec<MPoly> {
    let mut out = Vec::with_capacity(factors.len());
    let mut cur = f_monic.to_vec();
    for i in 0..factors.len() - 1 {
        let rest = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, u| zp.mul(&acc, u));
        let (g, h) = hensel_lift(zp, &cur, &factors[i], &rest, modulus);
        out.push(g);
        cur = h;
    }
    out.push(cur);
    out
}

fn pick_prime(f: &IntPoly) -> (Zp, usize) {
    let lc = f.lc();
    let mut best: Option<(Zp, usize)> = None;
    let mut lucky = 0;
    for p in primes_from(3) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let zp = Zp::new(p);
        let fp = zp.monic(&zp.from_int_poly(f));
        if !zp.is_squarefree(&fp) {
            continue;
        }
        let count = zp.count_factors(&fp);
        if best.as_ref().is_none_or(|(_, c)| count < *c) {
            best = Some((zp, count));
        }
        lucky += 1;
        if lucky >= LUCKY_PRIMES || count == 1 {
            break;
        }
    }
    best.unwrap()
}

/// Coefficient bound for any factor of `f`, scaled by `lc(f)`.
fn factor_bound(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    (BigInt::one() << n) * BigInt::from(n + 1) * max * f.lc().abs()
}

pub(super) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// `gcd(a, b)` in `Z[x]` for primitive `a`, `b`, skipping the PRS when a
/// prime shows them coprime.
fn gcd_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_constant() || b.is_constant() {
        return IntPoly::one();
    }
    let lc = a.lc();
    if let Some(p) = primes_from(1_000_003).take(3).find(|&p| !(&lc % BigInt::from(p)).is_zero()) {
        let zp = Zp::new(p);
        if zp.gcd(&zp.from_int_poly(a), &zp.from_int_poly(b)).len() == 1 {
            return IntPoly::one();
        }
    }
    a.gcd(b).normalized_primitive()
}

/// Squarefree decomposition (Yun) of a primitive `f` in `Z[x]`: primitive
/// `a_i` with positive leading coefficient and `f = ± Π a_i^i`.
pub fn squarefree_int(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let df = f.derivative();
    let a0 = gcd_primitive(f, &df);
    let mut b = f.div_exact(&a0).unwrap();
    let c = df.div_exact(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = if d.is_zero() { b.normalized_primitive() } else { gcd_primitive(&b, &d.primitive_part()) };
        let b_next = b.div_exact(&a).unwrap();
        let c_next = d.div_exact(&a).unwrap();
        d = c_next.sub(&b_next.derivative());
        if !a.is_constant() {
            out.push((a.normalized_primitive(), i));
        }
        b = b_next;
        i += 1;
    }
    out
}

/// Irreducible factors of a squarefree primitive `f` with positive leading
/// coefficient, each primitive with positive leading coefficient.
pub fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree().expect("nonconstant input");
    if n <= 1 {
        return vec![f.clone()];
    }
    let (zp, count) = pick_prime(f);
    if count == 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let fp = zp.monic(&zp.from_int_poly(f));
    let modular = zp.factor_squarefree(&fp, &mut rng);

    let bound = factor_bound(f) * 2;
    let mut modulus = BigInt::from(zp.p);
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lc_inv = f.lc().extended_gcd(&modulus).x.mod_floor(&modulus);
    let f_monic = ModM { m: &modulus }.norm(f.coeffs().iter().map(|c| c * &lc_inv).collect());
    let lifted = multi_lift(&zp, &f_monic, &modular, &modulus);

    recombine(f.clone(), lifted, &modulus)
}

fn recombine(mut g: IntPoly, mut rest: Vec<MPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let ring = ModM { m: modulus };
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= rest.len() {
        for combo in combinations(rest.len(), size) {
            let lc = g.lc();
            let g0 = g.coeff(0);
            if !g0.is_zero() {
                let c0 = combo
                    .iter()
                    .fold(lc.clone(), |acc, &i| (acc * rest[i].first().cloned().unwrap_or_default()).mod_floor(modulus));
                let c0 = symmetric(&c0, modulus);
                if c0.is_zero() || !(&lc * &g0).is_multiple_of(&c0) {
                    continue;
                }
            }
            let prod = combo
                .iter()
                .fold(vec![lc.clone()], |acc, &i| ring.mul(&acc, &rest[i]));
            let cand = IntPoly::new(prod.iter().map(|c| symmetric(c, modulus)).collect())
                .normalized_primitive();
            if let Some(quot) = g.div_exact(&cand) {
                found.push(cand);
                g = quot;
                for &i in combo.iter().rev() {
                    rest.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if g.degree().is_some_and(|d| d > 0) {
        found.push(g.normalized_primitive());
    }
    found
}
