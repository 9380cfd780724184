//! Normal-form arithmetic in the first Weyl and q-Weyl algebras.
//!
//! Elements are finite sums `Σ c_{a,b} x^a d^b` kept in the normal order
//! x-before-d. The commutation relation is `d x = q x d + 1`; the Weyl
//! algebra is the case `q = 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Field, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::theta;

/// Which algebra a context describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Weyl,
    QWeylSymbolic,
    QWeylNumeric(Rational),
}

/// The algebra an element lives in: the relation parameter `q` as an element
/// of the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraCtx<F: Field> {
    mode: Mode,
    q: F,
}

impl AlgebraCtx<Rational> {
    pub fn weyl() -> Self {
        AlgebraCtx {
            mode: Mode::Weyl,
            q: Rational::one(),
        }
    }

    /// q-Weyl algebra with a fixed rational `q0`. `q0 = 1` yields the Weyl
    /// algebra; `q0 = 0` is rejected because `q` must be a unit.
    pub fn q_numeric(q0: Rational) -> Result<Self> {
        if q0.is_zero() {
            return Err(Error::InvalidQ("q must be nonzero".into()));
        }
        if q0.is_one() {
            return Ok(Self::weyl());
        }
        Ok(AlgebraCtx {
            mode: Mode::QWeylNumeric(q0.clone()),
            q: q0,
        })
    }
}

impl AlgebraCtx<RatFunc> {
    /// q-Weyl algebra over `Q(q)` with `q` transcendental.
    pub fn q_symbolic() -> Self {
        AlgebraCtx {
            mode: Mode::QWeylSymbolic,
            q: RatFunc::q(),
        }
    }
}

impl<F: Field> AlgebraCtx<F> {
    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn is_weyl(&self) -> bool {
        self.mode == Mode::Weyl
    }

    /// Short name used in reports.
    pub fn name(&self) -> &'static str {
        match self.mode {
            Mode::Weyl => "weyl",
            _ => "qweyl",
        }
    }
}

/// The two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    D,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "x",
            Letter::D => "d",
        })
    }
}

/// Element of `A1` / `Q1` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylPoly<F: Field> {
    terms: BTreeMap<(u32, u32), F>,
    ctx: AlgebraCtx<F>,
}

/// Coefficients `[a choose k]_q`, `[k]_q!` and powers of `q` needed to
/// rewrite `d^a x^b` into normal form, for all `a, b <= max`.
struct KernelTable<F: Field> {
    binom: Vec<Vec<F>>,
    fact: Vec<F>,
    qpow: Vec<F>,
}

impl<F: Field> KernelTable<F> {
    fn new(ctx: &AlgebraCtx<F>, max_a: u32, max_b: u32) -> Self {
        let n = max_a.max(max_b) as usize;
        let q = ctx.q();
        let unit_q = q.is_one();
        let max_pow = (max_a as usize) * (max_b as usize);
        let mut qpow = Vec::with_capacity(max_pow + 1);
        qpow.push(F::one());
        for i in 0..max_pow {
            let next = if unit_q { F::one() } else { qpow[i].mul(q) };
            qpow.push(next);
        }
        // q-Pascal: [m, k] = [m-1, k-1] + q^k [m-1, k]
        let mut binom: Vec<Vec<F>> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut row = vec![F::one(); m + 1];
            for k in 1..m {
                let qk = if unit_q { F::one() } else { q.pow(k as u64) };
                row[k] = binom[m - 1][k - 1].add(&qk.mul(&binom[m - 1][k]));
            }
            binom.push(row);
        }
        let mut fact = Vec::with_capacity(n + 1);
        fact.push(F::one());
        for k in 1..=n {
            let b = theta::q_bracket_of(k as u64, q);
            fact.push(fact[k - 1].mul(&b));
        }
        KernelTable { binom, fact, qpow }
    }

    /// Coefficient of `x^{b-k} d^{a-k}` in the normal form of `d^a x^b`.
    fn coeff(&self, a: u32, b: u32, k: u32) -> F {
        let (a, b, k) = (a as usize, b as usize, k as usize);
        self.binom[a][k]
            .mul(&self.binom[b][k])
            .mul(&self.fact[k])
            .mul(&self.qpow[(a - k) * (b - k)])
    }
}

/// Normal form of `d^a x^b`:
/// `Σ_k [a,k]_q [b,k]_q [k]_q! q^{(a-k)(b-k)} x^{b-k} d^{a-k}`.
pub fn dx_kernel<F: Field>(a: u32, b: u32, ctx: &AlgebraCtx<F>) -> WeylPoly<F> {
    let table = KernelTable::new(ctx, a, b);
    let mut out = WeylPoly::zero(ctx);
    for k in 0..=a.min(b) {
        out.add_term(b - k, a - k, table.coeff(a, b, k));
    }
    out
}

impl<F: Field> WeylPoly<F> {
    pub fn zero(ctx: &AlgebraCtx<F>) -> Self {
        WeylPoly {
            terms: BTreeMap::new(),
            ctx: ctx.clone(),
        }
    }

    pub fn constant(c: F, ctx: &AlgebraCtx<F>) -> Self {
        Self::monomial(c, 0, 0, ctx)
    }

    pub fn one(ctx: &AlgebraCtx<F>) -> Self {
        Self::constant(F::one(), ctx)
    }

    /// `c x^a d^b`.
    pub fn monomial(c: F, a: u32, b: u32, ctx: &AlgebraCtx<F>) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(a, b, c);
        p
    }

    pub fn x(ctx: &AlgebraCtx<F>) -> Self {
        Self::monomial(F::one(), 1, 0, ctx)
    }

    pub fn d(ctx: &AlgebraCtx<F>) -> Self {
        Self::monomial(F::one(), 0, 1, ctx)
    }

    /// `letter^k`.
    pub fn letter_pow(letter: Letter, k: u32, ctx: &AlgebraCtx<F>) -> Self {
        match letter {
            Letter::X => Self::monomial(F::one(), k, 0, ctx),
            Letter::D => Self::monomial(F::one(), 0, k, ctx),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), F)>, ctx: &AlgebraCtx<F>) -> Self {
        let mut p = Self::zero(ctx);
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    /// Add `c x^a d^b` in place.
    pub fn add_term(&mut self, a: u32, b: u32, c: F) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &AlgebraCtx<F> {
        &self.ctx
    }

    /// Terms as `((a, b), c)` for `c x^a d^b`, in ascending `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> F {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value, if this is a constant (zero included).
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Leading term under the order comparing `x^a d^b` by `(a + b, a)`.
    pub fn leading_term(&self) -> Option<((u32, u32), &F)> {
        self.terms
            .iter()
            .max_by_key(|((a, b), _)| (a + b, *a))
            .map(|(k, c)| (*k, c))
    }

    /// Leading coefficient and the monic associate under the term order.
    pub fn monic(&self) -> (F, Self) {
        match self.leading_term() {
            None => (F::zero(), self.clone()),
            Some((_, c)) if c.is_one() => (F::one(), self.clone()),
            Some((_, c)) => {
                let lc = c.clone();
                let inv = lc.inv().unwrap();
                (lc, self.scale(&inv))
            }
        }
    }

    /// Total degree `max(a + b)`; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        WeylPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        WeylPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Normal-form product `self * rhs`.
    pub fn wmul(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let max_d = self.terms.keys().map(|&(_, b)| b).max().unwrap();
        let max_x = rhs.terms.keys().map(|&(a, _)| a).max().unwrap();
        let table = KernelTable::new(&self.ctx, max_d, max_x);
        let mut out = Self::zero(&self.ctx);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                let c12 = c1.mul(c2);
                // x^a1 (d^b1 x^a2) d^b2
                for k in 0..=b1.min(a2) {
                    let c = c12.mul(&table.coeff(b1, a2, k));
                    out.add_term(a1 + a2 - k, b1 + b2 - k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = acc.wmul(self).expect("same context");
        }
        acc
    }

    /// The Z-degree `b - a` shared by every monomial, or `None` if the
    /// monomials have different degrees.
    pub fn z_degree(&self) -> Result<Option<i64>> {
        let mut degs = self.terms.keys().map(|&(a, b)| b as i64 - a as i64);
        let first = degs.next().ok_or(Error::ZeroPolynomial)?;
        Ok(degs.all(|d| d == first).then_some(first))
    }

    /// Like [`z_degree`](Self::z_degree) but reports the graded components of
    /// an inhomogeneous input as an error.
    pub fn homogeneous_degree(&self) -> Result<i64> {
        match self.z_degree()? {
            Some(m) => Ok(m),
            None => Err(Error::NotHomogeneous {
                degrees: self.graded_decompose().keys().copied().collect(),
            }),
        }
    }

    /// Split into graded components keyed by Z-degree.
    pub fn graded_decompose(&self) -> BTreeMap<i64, Self> {
        let mut parts: BTreeMap<i64, Self> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            parts
                .entry(b as i64 - a as i64)
                .or_insert_with(|| Self::zero(&self.ctx))
                .add_term(a, b, c.clone());
        }
        parts
    }

    /// The degree-zero `ĥ` with `ĥ * letter^k = self`.
    ///
    /// For `d` the exponents shift directly. For `x`, `self = x^k g(θ)` and
    /// `ĥ(θ) = g((θ - [k]_q) / q^k)`.
    pub fn right_divide_pow(&self, letter: Letter, k: u32) -> Result<Self> {
        let m = self.homogeneous_degree()?;
        let expected = match letter {
            Letter::D => k as i64,
            Letter::X => -(k as i64),
        };
        if m != expected {
            return Err(Error::InexactDivision(format!(
                "element of degree {m} is not a left multiple of {letter}^{k}"
            )));
        }
        match letter {
            Letter::D => Ok(Self::from_terms(
                self.terms.iter().map(|(&(a, _), c)| ((a, a), c.clone())),
                &self.ctx,
            )),
            Letter::X => {
                let g = Self::from_terms(
                    self.terms.iter().map(|(&(_, b), c)| ((b, b), c.clone())),
                    &self.ctx,
                );
                let g = theta::theta_rewrite(&g)?;
                let map = theta::AffineMap::x_swap(k, &self.ctx).inverse();
                Ok(theta::theta_expand(&theta::affine_substitute(&g, &map)))
            }
        }
    }
}

impl WeylPoly<RatFunc> {
    /// Substitute `q = q0` into every coefficient. `None` if a denominator
    /// vanishes at `q0` or `q0` is not a valid parameter.
    pub fn specialize(&self, q0: &Rational) -> Option<WeylPoly<Rational>> {
        let ctx = AlgebraCtx::q_numeric(q0.clone()).ok()?;
        let mut out = WeylPoly::zero(&ctx);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c.eval(q0)?);
        }
        Some(out)
    }
}

/// Compact rendering in the style `x5d5+x3d3+4`, terms in descending order
/// under `(a + b, a)`.
impl<F: Field> fmt::Display for WeylPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        for (i, (a, b)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let mut mono = String::new();
            for (letter, e) in [("x", a), ("d", b)] {
                match e {
                    0 => {}
                    1 => mono.push_str(letter),
                    _ => {
                        mono.push_str(letter);
                        mono.push_str(&e.to_string());
                    }
                }
            }
            let (neg, body) = coeff_text(c);
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            match (body.as_str(), mono.is_empty()) {
                ("1", true) => f.write_str("1")?,
                ("1", false) => f.write_str(&mono)?,
                (_, true) => f.write_str(&body)?,
                (b, false) if b.contains('/') => write!(f, "{b}*{mono}")?,
                (b, false) => write!(f, "{b}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Split a coefficient into a sign and a magnitude string that parses back as
/// a single factor.
fn coeff_text<F: Field>(c: &F) -> (bool, String) {
    let s = c.to_string();
    let neg_s = c.neg().to_string();
    let (neg, mag) = if s.starts_with('-') && !neg_s.starts_with('-') {
        (true, neg_s)
    } else {
        (false, s)
    };
    if mag[1..].contains(['+', '-']) {
        (neg, format!("({mag})"))
    } else {
        (neg, mag)
    }
}
