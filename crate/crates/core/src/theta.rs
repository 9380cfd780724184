//! Euler-operator calculus.
//!
//! The degree-zero part of `A1` / `Q1` is the commutative polynomial ring
//! `K[θ]` with `θ = x d`. This module converts between the two
//! representations and implements the affine substitutions that move a
//! polynomial in `θ` past powers of `x` and `d`:
//!
//! ```text
//! f(θ) x^n = x^n f(q^n θ + [n]_q)
//! f(θ) d^n = d^n f(ψ^n(θ)),   ψ(θ) = (θ - 1) / q
//! ```

use crate::arith::{Field, Rational, UPoly};
use crate::error::{Error, Result};
use crate::weyl::{AlgebraCtx, WeylPoly};

/// `[n]_q = 1 + q + ... + q^{n-1}` for an explicit `q`.
pub fn q_bracket_of<F: Field>(n: u64, q: &F) -> F {
    if q.is_one() {
        return F::from_i64(n as i64);
    }
    let mut acc = F::zero();
    let mut qi = F::one();
    for _ in 0..n {
        acc = acc.add(&qi);
        qi = qi.mul(q);
    }
    acc
}

/// `[n]_q` in the given algebra; equals `n` in the Weyl algebra.
pub fn q_bracket<F: Field>(n: u64, ctx: &AlgebraCtx<F>) -> F {
    q_bracket_of(n, ctx.q())
}

/// The triangular number `T_i = i (i + 1) / 2`.
pub fn triangular(i: u64) -> u64 {
    i * (i + 1) / 2
}

/// A polynomial in `θ`, read as an element of the degree-zero part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPoly<F: Field> {
    pub body: UPoly<F>,
    pub ctx: AlgebraCtx<F>,
}

impl<F: Field> ThetaPoly<F> {
    pub fn new(body: UPoly<F>, ctx: &AlgebraCtx<F>) -> Self {
        ThetaPoly {
            body,
            ctx: ctx.clone(),
        }
    }
}

/// The substitution `θ ↦ scale θ + offset`, with `scale ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap<F: Field> {
    scale: F,
    offset: F,
}

impl<F: Field> AffineMap<F> {
    pub fn new(scale: F, offset: F) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(AffineMap { scale, offset })
    }

    pub fn identity() -> Self {
        AffineMap {
            scale: F::one(),
            offset: F::zero(),
        }
    }

    pub fn scale(&self) -> &F {
        &self.scale
    }

    pub fn offset(&self) -> &F {
        &self.offset
    }

    /// `self(inner(θ))`.
    pub fn compose(&self, inner: &Self) -> Self {
        AffineMap {
            scale: self.scale.mul(&inner.scale),
            offset: self.scale.mul(&inner.offset).add(&self.offset),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.scale.inv().expect("scale is nonzero");
        AffineMap {
            offset: self.offset.neg().mul(&inv),
            scale: inv,
        }
    }

    pub fn apply(&self, f: &UPoly<F>) -> UPoly<F> {
        f.compose_affine(&self.scale, &self.offset)
    }

    /// The argument of the `x^n` commutation rule, `q^n θ + [n]_q`.
    pub fn x_swap(n: u32, ctx: &AlgebraCtx<F>) -> Self {
        let q = ctx.q();
        AffineMap {
            scale: if q.is_one() { F::one() } else { q.pow(n as u64) },
            offset: q_bracket(n as u64, ctx),
        }
    }

    /// The argument of the `d^n` commutation rule: the `n`-fold composite of
    /// `ψ(θ) = (θ - 1)/q`, which is the inverse of the `x` rule for `n = 1`.
    /// In the Weyl algebra this is `θ - n`.
    pub fn d_swap(n: u32, ctx: &AlgebraCtx<F>) -> Self {
        if ctx.q().is_one() {
            return AffineMap {
                scale: F::one(),
                offset: F::from_i64(-(n as i64)),
            };
        }
        let step = Self::x_swap(1, ctx).inverse();
        (0..n).fold(Self::identity(), |acc, _| acc.compose(&step))
    }
}

/// `f(scale θ + offset)`.
pub fn affine_substitute<F: Field>(f: &ThetaPoly<F>, map: &AffineMap<F>) -> ThetaPoly<F> {
    ThetaPoly::new(map.apply(&f.body), &f.ctx)
}

/// `g` with `f(θ) x^n = x^n g(θ)`.
pub fn swap_past_x<F: Field>(f: &ThetaPoly<F>, n: u32) -> ThetaPoly<F> {
    affine_substitute(f, &AffineMap::x_swap(n, &f.ctx))
}

/// `g` with `f(θ) d^n = d^n g(θ)`.
pub fn swap_past_d<F: Field>(f: &ThetaPoly<F>, n: u32) -> ThetaPoly<F> {
    affine_substitute(f, &AffineMap::d_swap(n, &f.ctx))
}

/// `x^n d^n` as polynomials in `θ` for `n = 0..=max`, built by the recurrence
/// `x^{n+1} d^{n+1} = x^n d^n (θ - [n]_q) / q^n`.
///
/// In closed form `x^n d^n = q^{-T_{n-1}} Π_{i<n} (θ - [i]_q)`.
pub fn xd_powers<F: Field>(max: u32, ctx: &AlgebraCtx<F>) -> Vec<UPoly<F>> {
    let q = ctx.q();
    let q_inv = q.inv().expect("q is a unit");
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(UPoly::one());
    let mut q_inv_pow = F::one();
    for n in 0..max {
        let step = UPoly::linear(q_bracket(n as u64, ctx).neg());
        let next = out[n as usize].mul(&step);
        out.push(if q_inv_pow.is_one() {
            next
        } else {
            next.scale(&q_inv_pow)
        });
        q_inv_pow = q_inv_pow.mul(&q_inv);
    }
    out
}

/// Rewrite a degree-zero element `Σ c_n x^n d^n` as a polynomial in `θ`.
pub fn theta_rewrite<F: Field>(p: &WeylPoly<F>) -> Result<ThetaPoly<F>> {
    let ctx = p.ctx();
    if p.is_zero() {
        return Ok(ThetaPoly::new(UPoly::zero(), ctx));
    }
    if p.z_degree()? != Some(0) {
        return Err(Error::NotHomogeneous {
            degrees: p.graded_decompose().keys().copied().collect(),
        });
    }
    let max = p.terms().map(|(&(a, _), _)| a).max().unwrap_or(0);
    let basis = xd_powers(max, ctx);
    let mut body = UPoly::zero();
    for (&(a, _), c) in p.terms() {
        body = body.add(&basis[a as usize].scale(c));
    }
    Ok(ThetaPoly::new(body, ctx))
}

/// Substitute `θ = x d` and return the normal form.
pub fn theta_expand<F: Field>(f: &ThetaPoly<F>) -> WeylPoly<F> {
    let ctx = &f.ctx;
    let Some(deg) = f.body.degree() else {
        return WeylPoly::zero(ctx);
    };
    let basis = xd_powers(deg as u32, ctx);
    let mut rest = f.body.clone();
    let mut out = WeylPoly::zero(ctx);
    for n in (0..=deg).rev() {
        let top = rest.coeff(n);
        if top.is_zero() {
            continue;
        }
        // basis[n] has degree n with leading coefficient q^{-T_{n-1}}
        let c = top.div(&basis[n].lc());
        rest = rest.sub(&basis[n].scale(&c));
        out.add_term(n as u32, n as u32, c);
    }
    out
}

/// Polynomial in the shift algebra `K<n, s | s n = (n + 1) s>`, stored as
/// `Σ p_i(n) s^i` with `coeffs[i] = p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftPoly {
    pub coeffs: Vec<UPoly<Rational>>,
}

impl ShiftPoly {
    pub fn new(mut coeffs: Vec<UPoly<Rational>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ShiftPoly { coeffs }
    }

    /// Product using `s^i r(n) = r(n + i) s^i`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ShiftPoly::new(Vec::new());
        }
        let mut out = vec![UPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, r) in other.coeffs.iter().enumerate() {
                let shifted = r.compose_affine(&Rational::one(), &Rational::from_i64(i as i64));
                out[i + j] = out[i + j].add(&p.mul(&shifted));
            }
        }
        ShiftPoly::new(out)
    }
}

/// Embed the shift algebra into the Weyl algebra by `n ↦ θ`, `s ↦ d`.
pub fn embed_shift(p: &ShiftPoly, ctx: &AlgebraCtx<Rational>) -> Result<WeylPoly<Rational>> {
    if !ctx.is_weyl() {
        return Err(Error::NotWeylMode);
    }
    let mut out = WeylPoly::zero(ctx);
    for (i, pi) in p.coeffs.iter().enumerate() {
        let expanded = theta_expand(&ThetaPoly::new(pi.clone(), ctx));
        for (&(a, b), c) in expanded.terms() {
            out.add_term(a, b + i as u32, c.clone());
        }
    }
    Ok(out)
}
