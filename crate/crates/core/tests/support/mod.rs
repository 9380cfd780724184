//! Independent oracles and property checks shared by the integration tests.
//!
//! Nothing here calls the normal-form kernel, the θ-calculus or the
//! factorizer to produce an expected value; those are computed by rewriting
//! words letter by letter or by solving linear systems.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weylfac::homog::{homogfac_all_words, is_closure_stable};
use weylfac::theta::{
    q_bracket, swap_past_d, swap_past_x, theta_expand, theta_rewrite, triangular, AffineMap,
};
use weylfac::unifactor::{factor_over_q, factor_over_qq};
use weylfac::weyl::dx_kernel;
use weylfac::{
    canonical_word, homogfac, verify_factorization, AlgebraCtx, Field, IntPoly, Letter, RatFunc,
    Rational, ShiftPoly, ThetaPoly, UPoly, WeylPoly,
};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn weyl() -> AlgebraCtx<Rational> {
    AlgebraCtx::weyl()
}

pub fn numeric() -> AlgebraCtx<Rational> {
    AlgebraCtx::q_numeric(rat(-3, 2)).unwrap()
}

pub fn symbolic() -> AlgebraCtx<RatFunc> {
    AlgebraCtx::q_symbolic()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

/// `(c0 + c1 q) / den` as a field element of `ctx`.
pub fn scalar<F: Field>(raw: (i64, i64, i64), ctx: &AlgebraCtx<F>) -> F {
    let (c0, c1, den) = raw;
    F::from_i64(c0)
        .add(&F::from_i64(c1).mul(ctx.q()))
        .mul(&F::from_rational(&rat(1, den)))
}

fn raw_scalar() -> impl Strategy<Value = (i64, i64, i64)> {
    (-4i64..=4, -2i64..=2, 1i64..=3)
}

fn raw_weyl(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(u32, u32, (i64, i64, i64))>> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, raw_scalar()), 1..=max_terms)
}

fn weyl_from_raw<F: Field>(raw: &[(u32, u32, (i64, i64, i64))], ctx: &AlgebraCtx<F>) -> WeylPoly<F> {
    let mut p = WeylPoly::zero(ctx);
    for &(a, b, c) in raw {
        p.add_term(a, b, scalar(c, ctx));
    }
    p
}

fn upoly_from_raw<F: Field>(raw: &[(i64, i64, i64)], ctx: &AlgebraCtx<F>) -> UPoly<F> {
    UPoly::new(raw.iter().map(|&c| scalar(c, ctx)).collect())
}

// ---------------------------------------------------------------------------
// Word rewriting

/// Words over two letters: `0` is the left generator (`x` or `n`), `1` the
/// right one (`d` or `s`).
pub type Word = Vec<u8>;

/// Rewrite every occurrence of `1 0` with `rule` until all words are of the
/// form `0^a 1^b`; returns the coefficients of the normal words by `(a, b)`.
pub fn rewrite_words<F: Field>(
    start: Vec<(Word, F)>,
    rule: &dyn Fn() -> Vec<(Word, F)>,
) -> BTreeMap<(u32, u32), F> {
    let mut pending: BTreeMap<Word, F> = BTreeMap::new();
    let mut done: BTreeMap<(u32, u32), F> = BTreeMap::new();
    let add = |map: &mut BTreeMap<Word, F>, w: Word, c: F| {
        let e = map.entry(w).or_insert_with(F::zero);
        *e = e.add(&c);
    };
    for (w, c) in start {
        add(&mut pending, w, c);
    }
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match w.windows(2).position(|p| p == [1, 0]) {
            None => {
                let a = w.iter().filter(|&&l| l == 0).count() as u32;
                let key = (a, w.len() as u32 - a);
                let e = done.entry(key).or_insert_with(F::zero);
                *e = e.add(&c);
            }
            Some(i) => {
                for (mid, k) in rule() {
                    let mut nw = w[..i].to_vec();
                    nw.extend(mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    add(&mut pending, nw, c.mul(&k));
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

fn letters(a: u32, b: u32) -> Word {
    let mut w = vec![0u8; a as usize];
    w.extend(std::iter::repeat_n(1u8, b as usize));
    w
}

/// Normal form of a product of normal-form polynomials, computed by
/// rewriting `d x -> q x d + 1` one step at a time.
pub fn naive_product<F: Field>(p: &WeylPoly<F>, r: &WeylPoly<F>) -> WeylPoly<F> {
    let ctx = p.ctx().clone();
    let q = ctx.q().clone();
    let mut start = Vec::new();
    for (&(a, b), c) in p.terms() {
        for (&(a2, b2), c2) in r.terms() {
            let mut w = letters(a, b);
            w.extend(letters(a2, b2));
            start.push((w, c.mul(c2)));
        }
    }
    let rule = move || vec![(vec![0u8, 1], q.clone()), (Vec::new(), F::one())];
    let out = rewrite_words(start, &rule);
    WeylPoly::from_terms(out, &ctx)
}

/// `d^a x^b` by word rewriting.
pub fn naive_kernel<F: Field>(a: u32, b: u32, ctx: &AlgebraCtx<F>) -> WeylPoly<F> {
    naive_product(&WeylPoly::monomial(F::one(), 0, a, ctx), &WeylPoly::monomial(F::one(), b, 0, ctx))
}

/// Shift-algebra product via `s n -> n s + s`.
pub fn naive_shift_product(p: &ShiftPoly, r: &ShiftPoly) -> ShiftPoly {
    let words = |s: &ShiftPoly| {
        let mut out = Vec::new();
        for (i, c) in s.coeffs.iter().enumerate() {
            for (k, ck) in c.coeffs().iter().enumerate() {
                out.push((letters(k as u32, i as u32), ck.clone()));
            }
        }
        out
    };
    let mut start = Vec::new();
    for (w1, c1) in words(p) {
        for (w2, c2) in words(r) {
            let mut w = w1.clone();
            w.extend(w2.iter());
            start.push((w, c1.clone() * c2));
        }
    }
    let one = rat(1, 1);
    let rule = move || vec![(vec![0u8, 1], one.clone()), (vec![1u8], one.clone())];
    let out = rewrite_words(start, &rule);
    let max_s = out.keys().map(|&(_, b)| b).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Vec::new(); max_s + 1];
    for ((k, i), c) in out {
        let col: &mut Vec<Rational> = &mut coeffs[i as usize];
        if col.len() <= k as usize {
            col.resize(k as usize + 1, rat(0, 1));
        }
        col[k as usize] = c;
    }
    ShiftPoly::new(coeffs.into_iter().map(UPoly::new).collect())
}

// ---------------------------------------------------------------------------
// Linear algebra

/// Some solution of `rows · v = rhs`, if the system is consistent.
pub fn solve<F: Field>(mut rows: Vec<Vec<F>>, mut rhs: Vec<F>) -> Option<Vec<F>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for j in 0..n {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        rhs[r] = rhs[r].mul(&inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..n {
                    let t = f.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&t);
                }
                let t = f.mul(&rhs[r]);
                rhs[i] = rhs[i].sub(&t);
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|c| !c.is_zero()) {
        return None;
    }
    let mut v = vec![F::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        v[col] = rhs[i].clone();
    }
    Some(v)
}

/// The monomial `x^i d^j` of Z-degree `deg` with `min(i, j) = k`.
fn graded_monomial(deg: i64, k: u32) -> (u32, u32) {
    if deg >= 0 {
        (k, k + deg as u32)
    } else {
        (k + (-deg) as u32, k)
    }
}

/// Some homogeneous `φ` with `φ · r = f` and at most `size + 1` terms,
/// found by solving for its coefficients.
pub fn right_cofactor<F: Field>(f: &WeylPoly<F>, r: &WeylPoly<F>, size: u32) -> Option<WeylPoly<F>> {
    let ctx = f.ctx();
    let deg = f.homogeneous_degree().ok()? - r.homogeneous_degree().ok()?;
    let basis: Vec<WeylPoly<F>> = (0..=size)
        .map(|k| {
            let (a, b) = graded_monomial(deg, k);
            WeylPoly::monomial(F::one(), a, b, ctx)
        })
        .collect();
    let images: Vec<WeylPoly<F>> = basis.iter().map(|m| naive_product(m, r)).collect();
    let mut keys: Vec<(u32, u32)> = f.terms().map(|(k, _)| *k).collect();
    for im in &images {
        keys.extend(im.terms().map(|(k, _)| *k));
    }
    keys.sort();
    keys.dedup();
    let rows = keys
        .iter()
        .map(|&(a, b)| images.iter().map(|im| im.coeff(a, b)).collect())
        .collect();
    let rhs = keys.iter().map(|&(a, b)| f.coeff(a, b)).collect();
    let v = solve(rows, rhs)?;
    let mut phi = WeylPoly::zero(ctx);
    for (m, c) in basis.iter().zip(v) {
        phi = phi.add(&m.scale(&c)).unwrap();
    }
    Some(phi)
}

/// Whether the degree-zero `f` is a left multiple of `x` or `d`, searching
/// cofactors with up to `size + 1` terms.
pub fn has_letter_right_factor<F: Field>(f: &WeylPoly<F>, size: u32) -> bool {
    let ctx = f.ctx();
    [WeylPoly::x(ctx), WeylPoly::d(ctx)]
        .iter()
        .any(|r| right_cofactor(f, r, size).is_some())
}

// ---------------------------------------------------------------------------
// Rational roots

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::from(1);
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            out.push(&n / &i);
        }
        i += 1;
    }
    out
}

/// Whether an integer polynomial has a rational root (rational root test).
pub fn has_rational_root(f: &IntPoly) -> bool {
    if f.coeff(0).is_zero() {
        return true;
    }
    for p in divisors(&f.coeff(0)) {
        for q in divisors(&f.lc()) {
            if !p.gcd(&q).eq(&BigInt::from(1)) {
                continue;
            }
            for p in [p.clone(), -p.clone()] {
                // q^n f(p/q)
                let n = f.degree().unwrap();
                let mut acc = BigInt::zero();
                for (k, c) in f.coeffs().iter().enumerate() {
                    acc += c * p.pow(k as u32) * q.pow((n - k) as u32);
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn int_poly_of(f: &UPoly<Rational>) -> IntPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect(),
    )
}

/// Polynomials of degree at most three are irreducible over `Q` iff they
/// have no rational root.
pub fn small_irreducible_over_q(f: &UPoly<Rational>) -> bool {
    match f.degree() {
        Some(1) => true,
        Some(2) | Some(3) => !has_rational_root(&int_poly_of(f)),
        _ => panic!("oracle only covers degrees 1 to 3"),
    }
}

// ---------------------------------------------------------------------------
// Property checks

pub fn prop_ring_axioms<F: Field>(ctx: &AlgebraCtx<F>, cases: u32) -> Result<(), String> {
    let strat = (raw_weyl(6, 3), raw_weyl(6, 3), raw_weyl(6, 3));
    run("ring axioms", cases, strat, |(a, b, c)| {
        let (a, b, c) = (weyl_from_raw(&a, ctx), weyl_from_raw(&b, ctx), weyl_from_raw(&c, ctx));
        let ab = a.wmul(&b).unwrap();
        let bc = b.wmul(&c).unwrap();
        prop_assert_eq!(ab.wmul(&c).unwrap(), a.wmul(&bc).unwrap());
        let left = a.wmul(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, ab.add(&a.wmul(&c).unwrap()).unwrap());
        let right = a.add(&b).unwrap().wmul(&c).unwrap();
        prop_assert_eq!(right, a.wmul(&c).unwrap().add(&bc).unwrap());
        Ok(())
    })
}

pub fn prop_products_match_rewriting<F: Field>(ctx: &AlgebraCtx<F>, cases: u32) -> Result<(), String> {
    run("product vs rewriting", cases, (raw_weyl(4, 2), raw_weyl(4, 2)), |(a, b)| {
        let (a, b) = (weyl_from_raw(&a, ctx), weyl_from_raw(&b, ctx));
        prop_assert_eq!(a.wmul(&b).unwrap(), naive_product(&a, &b));
        Ok(())
    })
}

pub fn check_kernel<F: Field>(ctx: &AlgebraCtx<F>) -> Result<(), String> {
    for a in 0..=5 {
        for b in 0..=5 {
            if dx_kernel(a, b, ctx) != naive_kernel(a, b, ctx) {
                return Err(format!("kernel d^{a} x^{b} in {}", ctx.name()));
            }
        }
    }
    Ok(())
}

pub fn prop_theta_roundtrip<F: Field>(ctx: &AlgebraCtx<F>, cases: u32) -> Result<(), String> {
    let strat = prop::collection::vec(raw_scalar(), 1..=13);
    run("theta roundtrip", cases, strat, |raw| {
        let mut p = WeylPoly::zero(ctx);
        for (n, &c) in raw.iter().enumerate() {
            p.add_term(n as u32, n as u32, scalar(c, ctx));
        }
        let f = theta_rewrite(&p).unwrap();
        prop_assert_eq!(&theta_expand(&f), &p);
        prop_assert_eq!(theta_rewrite(&theta_expand(&f)).unwrap(), f);
        Ok(())
    })
}

pub fn prop_swaps<F: Field>(ctx: &AlgebraCtx<F>, cases: u32) -> Result<(), String> {
    let strat = (prop::collection::vec(raw_scalar(), 1..=5), 0u32..=5);
    run("swap identities", cases, strat, |(raw, n)| {
        let f = ThetaPoly::new(upoly_from_raw(&raw, ctx), ctx);
        let fe = theta_expand(&f);
        for letter in [Letter::X, Letter::D] {
            let ln = WeylPoly::letter_pow(letter, n, ctx);
            let g = match letter {
                Letter::X => swap_past_x(&f, n),
                Letter::D => swap_past_d(&f, n),
            };
            let lhs = naive_product(&fe, &ln);
            let rhs = naive_product(&ln, &theta_expand(&g));
            prop_assert_eq!(lhs, rhs, "letter {} n {}", letter, n);
        }
        Ok(())
    })
}

/// The `d`-swap argument in closed form:
/// `θ ↦ (1/q) ((θ - 1)/q^{n-1} - (q^{2-n} - q)/(1 - q))`.
pub fn check_d_swap_closed_form() -> Result<(), String> {
    let ctx = symbolic();
    let q = RatFunc::q();
    let qi = q.inv().unwrap();
    let one = RatFunc::one();
    for n in 1..=5i64 {
        let q_pow = |e: i64| if e >= 0 { q.pow(e as u64) } else { qi.pow((-e) as u64) };
        let scale = qi.mul(&q_pow(-(n - 1)));
        let offset = qi.mul(
            &q_pow(-(n - 1))
                .neg()
                .sub(&q_pow(2 - n).sub(&q).div(&one.sub(&q))),
        );
        let expected = AffineMap::new(scale, offset).unwrap();
        if AffineMap::d_swap(n as u32, &ctx) != expected {
            return Err(format!("d-swap argument differs for n = {n}"));
        }
    }
    Ok(())
}

/// `x^n d^n = q^{-T_{n-1}} Π_{i<n} (θ - [i]_q)` with `[i]_q = (1 - q^i)/(1 - q)`.
pub fn check_power_formula<F: Field>(ctx: &AlgebraCtx<F>) -> Result<(), String> {
    let q = ctx.q().clone();
    let bracket = |i: u64| {
        if q.is_one() {
            F::from_i64(i as i64)
        } else {
            F::one().sub(&q.pow(i)).div(&F::one().sub(&q))
        }
    };
    for n in 0..=8u64 {
        let mut prod = UPoly::one();
        for i in 0..n {
            prod = prod.mul(&UPoly::linear(bracket(i).neg()));
        }
        let t = if n == 0 { 0 } else { triangular(n - 1) };
        let expected = prod.scale(&q.inv().unwrap().pow(t));
        let got = theta_rewrite(&WeylPoly::monomial(F::one(), n as u32, n as u32, ctx))
            .unwrap()
            .body;
        if got != expected {
            return Err(format!("x^{n} d^{n} in {}", ctx.name()));
        }
        if n > 0 && q_bracket(n, ctx) != bracket(n) {
            return Err(format!("[{n}]_q in {}", ctx.name()));
        }
    }
    Ok(())
}

fn raw_int_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop_oneof![1i64..=5, -5i64..=-1]).prop_map(|(mut c, lc)| {
            c.push(lc);
            c
        })
    })
}

pub fn prop_factor_over_q(cases: u32) -> Result<(), String> {
    let strat = (prop::collection::vec(raw_int_poly(3), 1..=4), 1i64..=7);
    run("factorization over Q", cases, strat, |(parts, unit)| {
        let f = parts
            .iter()
            .fold(UPoly::constant(rat(unit, 1)), |acc, p| acc.mul(&UPoly::from_i64s(p)));
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        let deg: usize = fac.factors.iter().map(|(g, e)| g.degree().unwrap() * e).sum();
        prop_assert_eq!(deg, f.degree().unwrap());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(g.degree().unwrap() <= 3);
            prop_assert!(small_irreducible_over_q(g), "reducible factor {}", g);
        }
        for w in fac.factors.windows(2) {
            prop_assert!(w[0].0 != w[1].0, "repeated factor");
        }
        Ok(())
    })
}

fn rf_from_raw(c: &[i64]) -> RatFunc {
    RatFunc::from_poly(IntPoly::from_i64s(c))
}

/// Irreducibility witness over `Q(q)` for θ-degree at most 3: some integer
/// specialization of the same degree without a rational root.
fn witness_irreducible_qq(g: &UPoly<RatFunc>) -> bool {
    let d = g.degree().unwrap();
    if d == 1 {
        return true;
    }
    (2..30).any(|q0: i64| {
        let q0 = rat(q0, 1);
        let Some(coeffs) = g.coeffs().iter().map(|c| c.eval(&q0)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let s = UPoly::new(coeffs);
        s.degree() == Some(d) && small_irreducible_over_q(&s)
    })
}

pub fn prop_factor_over_qq(cases: u32) -> Result<(), String> {
    let coeff = prop::collection::vec(-3i64..=3, 0..=3);
    let part = (prop::collection::vec(coeff, 1..=2), prop_oneof![Just(vec![1i64]), Just(vec![0, 1]), Just(vec![1, 1])]);
    let strat = prop::collection::vec(part, 1..=3);
    run("factorization over Q(q)", cases, strat, |parts| {
        let f = parts.iter().fold(UPoly::one(), |acc, (low, lc)| {
            let mut c: Vec<RatFunc> = low.iter().map(|v| rf_from_raw(v)).collect();
            c.push(rf_from_raw(lc));
            acc.mul(&UPoly::new(c))
        });
        let fac = factor_over_qq(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        let deg: usize = fac.factors.iter().map(|(g, e)| g.degree().unwrap() * e).sum();
        prop_assert_eq!(deg, f.degree().unwrap());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(g.degree().unwrap() <= 2);
            prop_assert!(witness_irreducible_qq(g), "no irreducibility witness for {}", g);
        }
        Ok(())
    })
}

fn raw_homogeneous() -> impl Strategy<Value = (Vec<i64>, bool, Vec<i64>, i64)> {
    (
        prop::collection::vec(-2i64..=2, 0..=4),
        any::<bool>(),
        prop::collection::vec(-3i64..=3, 2),
        -3i64..=3,
    )
}

/// A homogeneous element `f(θ) · letter^|m|` built from integer-rooted
/// linear factors and an optional quadratic.
fn homogeneous_from_raw<F: Field>(raw: &(Vec<i64>, bool, Vec<i64>, i64), ctx: &AlgebraCtx<F>) -> WeylPoly<F> {
    let (roots, quad, qc, m) = raw;
    let mut f = UPoly::one();
    for &r in roots {
        f = f.mul(&UPoly::linear(F::from_i64(-r)));
    }
    if *quad && roots.len() <= 2 {
        f = f.mul(&UPoly::new(vec![F::from_i64(qc[0]), F::from_i64(qc[1]), F::one()]));
    }
    let letter = if *m >= 0 { Letter::D } else { Letter::X };
    theta_expand(&ThetaPoly::new(f, ctx))
        .wmul(&WeylPoly::letter_pow(letter, m.unsigned_abs() as u32, ctx))
        .unwrap()
}

pub fn prop_homogfac_all<F: weylfac::FactorField>(ctx: &AlgebraCtx<F>, cases: u32) -> Result<(), String> {
    run("all factorizations", cases, raw_homogeneous(), |raw| {
        let h = homogeneous_from_raw(&raw, ctx);
        let words = homogfac_all_words(&h).unwrap();
        prop_assert!(!words.is_empty());
        for w in &words {
            prop_assert!(verify_factorization(&h, &w.to_factorization()), "bad word {:?}", w.tokens);
        }
        prop_assert!(is_closure_stable(&words));
        let one = homogfac(&h).unwrap();
        prop_assert!(words.iter().any(|w| canonical_word(w) == one.key()));
        Ok(())
    })
}

pub fn prop_embed_shift(cases: u32) -> Result<(), String> {
    let shift = || {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 0..=3), 1..=3).prop_map(|cs| {
            ShiftPoly::new(cs.iter().map(|c| UPoly::from_i64s(c)).collect())
        })
    };
    let ctx = weyl();
    run("shift embedding", cases, (shift(), shift()), |(a, b)| {
        let ab = a.mul(&b);
        prop_assert_eq!(&ab, &naive_shift_product(&a, &b));
        let ea = weylfac::theta::embed_shift(&a, &ctx).unwrap();
        let eb = weylfac::theta::embed_shift(&b, &ctx).unwrap();
        let eab = weylfac::theta::embed_shift(&ab, &ctx).unwrap();
        prop_assert_eq!(eab, ea.wmul(&eb).unwrap());
        Ok(())
    })
}

/// Irreducible monic `θ`-polynomials of degree at most three split in the
/// algebra exactly when they are `θ` or `θ + 1/q`.
pub fn check_theta_irreducibles<F: weylfac::FactorField>(
    ctx: &AlgebraCtx<F>,
    samples: usize,
) -> Result<(), String> {
    let q_inv = ctx.q().inv().unwrap();
    let special = [UPoly::var(), UPoly::linear(q_inv)];
    for f in &special {
        let (first, second, unit) = weylfac::split_theta_like(f, ctx)
            .ok_or_else(|| format!("{f} is not split in {}", ctx.name()))?;
        let prod = WeylPoly::letter_pow(first, 1, ctx)
            .wmul(&WeylPoly::letter_pow(second, 1, ctx))
            .unwrap()
            .scale(&unit);
        let fe = theta_expand(&ThetaPoly::new(f.clone(), ctx));
        if prod != fe {
            return Err(format!("split of {f} does not multiply back"));
        }
        if !has_letter_right_factor(&fe, 3) {
            return Err(format!("linear-system search misses the split of {f}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
    let mut seen = 0;
    let mut tries = 0;
    while seen < samples {
        tries += 1;
        if tries > 100 * samples {
            return Err("could not sample enough irreducibles".into());
        }
        let deg = rng.gen_range(1..=3);
        let mut coeffs: Vec<F> = (0..deg)
            .map(|_| {
                let raw = (rng.gen_range(-4..=4), rng.gen_range(-2..=2), rng.gen_range(1..=3));
                scalar(raw, ctx)
            })
            .collect();
        coeffs.push(F::one());
        let f = UPoly::new(coeffs);
        if special.contains(&f) || !weylfac::unifactor::is_irreducible(&f).unwrap() {
            continue;
        }
        seen += 1;
        if weylfac::split_theta_like(&f, ctx).is_some() {
            return Err(format!("{f} was split"));
        }
        let fe = theta_expand(&ThetaPoly::new(f.clone(), ctx));
        if has_letter_right_factor(&fe, 3) {
            return Err(format!("{f} has a letter factor in {}", ctx.name()));
        }
    }
    Ok(())
}

