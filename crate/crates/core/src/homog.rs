//! Factorization of homogeneous elements.
//!
//! A homogeneous `h` of degree `m` is `ĥ · d^m` (or `ĥ · x^{-m}`) with `ĥ` of
//! degree zero, hence a polynomial in `θ`. Factoring that polynomial gives one
//! factorization of `h`; all others are reached by commuting `θ`-factors past
//! letters, splitting `θ = x·d` and `θ + 1/q = (1/q)·d·x`, and merging those
//! letter pairs back.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::arith::{Field, UPoly};
use crate::error::{Error, Result};
use crate::theta::{theta_expand, theta_rewrite, AffineMap, ThetaPoly};
use crate::unifactor::FactorField;
use crate::weyl::{AlgebraCtx, Letter, WeylPoly};

/// One factor of a word: a monic polynomial in `θ` or a single letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token<F: Field> {
    Theta(UPoly<F>),
    X,
    D,
}

impl<F: Field> Token<F> {
    fn letter(l: Letter) -> Self {
        match l {
            Letter::X => Token::X,
            Letter::D => Token::D,
        }
    }
}

/// `unit · t_1 ⋯ t_n` with monic tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorWord<F: Field> {
    pub unit: F,
    pub tokens: Vec<Token<F>>,
    pub ctx: AlgebraCtx<F>,
}

/// Unit and factor terms; equal keys mean equal factorizations.
pub type FactorKey<F> = (F, Vec<Vec<((u32, u32), F)>>);

/// `unit · f_1 ⋯ f_n` with every factor monic under the term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization<F: Field> {
    pub unit: F,
    pub factors: Vec<WeylPoly<F>>,
    pub ctx: AlgebraCtx<F>,
}

impl<F: Field> Factorization<F> {
    /// The ordered product including the unit.
    pub fn product(&self) -> WeylPoly<F> {
        self.factors
            .iter()
            .fold(WeylPoly::constant(self.unit.clone(), &self.ctx), |acc, f| {
                acc.wmul(f).expect("factors share the context")
            })
    }

    /// Sort key: the unit and the term lists of the factors.
    pub fn key(&self) -> FactorKey<F> {
        (
            self.unit.clone(),
            self.factors
                .iter()
                .map(|f| f.terms().map(|(k, c)| (*k, c.clone())).collect())
                .collect(),
        )
    }
}

/// Comparable key of a word: unit and expanded monic factors.
pub fn canonical_word<F: Field>(w: &FactorWord<F>) -> FactorKey<F> {
    w.to_factorization().key()
}

/// `Some((first, second, c))` when the monic `f` equals `c · first · second`
/// in the algebra: `θ = x·d` and `θ + 1/q = (1/q)·d·x`.
pub fn split_theta_like<F: Field>(
    f: &UPoly<F>,
    ctx: &AlgebraCtx<F>,
) -> Option<(Letter, Letter, F)> {
    if f.degree() != Some(1) || !f.is_monic() {
        return None;
    }
    let c = f.coeff(0);
    if c.is_zero() {
        return Some((Letter::X, Letter::D, F::one()));
    }
    let q_inv = ctx.q().inv().expect("q is a unit");
    if c == q_inv {
        return Some((Letter::D, Letter::X, q_inv));
    }
    None
}

fn expand_token<F: Field>(t: &Token<F>, ctx: &AlgebraCtx<F>) -> WeylPoly<F> {
    match t {
        Token::X => WeylPoly::x(ctx),
        Token::D => WeylPoly::d(ctx),
        Token::Theta(f) => theta_expand(&ThetaPoly::new(f.clone(), ctx)),
    }
}

impl<F: Field> FactorWord<F> {
    pub fn to_factorization(&self) -> Factorization<F> {
        let mut unit = self.unit.clone();
        let factors = self
            .tokens
            .iter()
            .map(|t| {
                let (lc, monic) = expand_token(t, &self.ctx).monic();
                unit = unit.mul(&lc);
                monic
            })
            .collect();
        Factorization {
            unit,
            factors,
            ctx: self.ctx.clone(),
        }
    }

    /// Whether some token is `θ` or `θ + 1/q`.
    pub fn has_splittable(&self) -> bool {
        self.tokens.iter().any(|t| match t {
            Token::Theta(f) => split_theta_like(f, &self.ctx).is_some(),
            _ => false,
        })
    }

    /// Split every splittable token.
    pub fn refine(&self) -> Self {
        let mut unit = self.unit.clone();
        let mut tokens = Vec::with_capacity(self.tokens.len());
        for t in &self.tokens {
            match t {
                Token::Theta(f) => match split_theta_like(f, &self.ctx) {
                    Some((a, b, c)) => {
                        unit = unit.mul(&c);
                        tokens.push(Token::letter(a));
                        tokens.push(Token::letter(b));
                    }
                    None => tokens.push(t.clone()),
                },
                _ => tokens.push(t.clone()),
            }
        }
        FactorWord {
            unit,
            tokens,
            ctx: self.ctx.clone(),
        }
    }
}

/// The substitutions used by the moves: `φ(θ) = qθ + 1` and its inverse.
struct Moves<F: Field> {
    phi: AffineMap<F>,
    psi: AffineMap<F>,
    q: F,
    q_inv: F,
    ctx: AlgebraCtx<F>,
}

impl<F: Field> Moves<F> {
    fn new(ctx: &AlgebraCtx<F>) -> Self {
        let phi = AffineMap::x_swap(1, ctx);
        Moves {
            psi: phi.inverse(),
            phi,
            q: ctx.q().clone(),
            q_inv: ctx.q().inv().expect("q is a unit"),
            ctx: ctx.clone(),
        }
    }

    fn theta(&self, f: &UPoly<F>, map: &AffineMap<F>) -> (F, Token<F>) {
        let (lc, monic) = map.apply(f).monic();
        (lc, Token::Theta(monic))
    }

    /// Every word one move away from `w`.
    fn neighbors(&self, w: &FactorWord<F>) -> Vec<FactorWord<F>> {
        let mut out = Vec::new();
        let replace = |i: usize, width: usize, new: Vec<Token<F>>, scale: Option<F>| {
            let mut tokens = Vec::with_capacity(w.tokens.len() + 1);
            tokens.extend_from_slice(&w.tokens[..i]);
            tokens.extend(new);
            tokens.extend_from_slice(&w.tokens[i + width..]);
            FactorWord {
                unit: match scale {
                    Some(c) => w.unit.mul(&c),
                    None => w.unit.clone(),
                },
                tokens,
                ctx: self.ctx.clone(),
            }
        };
        for (i, t) in w.tokens.iter().enumerate() {
            if let Token::Theta(f) = t {
                if let Some((a, b, c)) = split_theta_like(f, &self.ctx) {
                    out.push(replace(i, 1, vec![Token::letter(a), Token::letter(b)], Some(c)));
                }
            }
        }
        for i in 0..w.tokens.len().saturating_sub(1) {
            let pair = (&w.tokens[i], &w.tokens[i + 1]);
            let moved = match pair {
                // f(θ) x = x f(φ θ),  f(θ) d = d f(ψ θ)
                (Token::Theta(f), Token::X) => {
                    let (c, t) = self.theta(f, &self.phi);
                    Some((vec![Token::X, t], Some(c)))
                }
                (Token::Theta(f), Token::D) => {
                    let (c, t) = self.theta(f, &self.psi);
                    Some((vec![Token::D, t], Some(c)))
                }
                // x g(θ) = g(ψ θ) x,  d g(θ) = g(φ θ) d
                (Token::X, Token::Theta(g)) => {
                    let (c, t) = self.theta(g, &self.psi);
                    Some((vec![t, Token::X], Some(c)))
                }
                (Token::D, Token::Theta(g)) => {
                    let (c, t) = self.theta(g, &self.phi);
                    Some((vec![t, Token::D], Some(c)))
                }
                (Token::Theta(f), Token::Theta(g)) if f != g => {
                    Some((vec![Token::Theta(g.clone()), Token::Theta(f.clone())], None))
                }
                (Token::X, Token::D) => Some((vec![Token::Theta(UPoly::var())], None)),
                (Token::D, Token::X) => Some((
                    vec![Token::Theta(UPoly::linear(self.q_inv.clone()))],
                    Some(self.q.clone()),
                )),
                _ => None,
            };
            if let Some((new, scale)) = moved {
                out.push(replace(i, 2, new, scale));
            }
        }
        out
    }
}

fn trailing<F: Field>(h: &WeylPoly<F>) -> Result<(WeylPoly<F>, Letter, u32)> {
    let m = h.homogeneous_degree()?;
    let (letter, k) = if m >= 0 {
        (Letter::D, m as u32)
    } else {
        (Letter::X, (-m) as u32)
    };
    let hat = if k == 0 {
        h.clone()
    } else {
        h.right_divide_pow(letter, k)?
    };
    Ok((hat, letter, k))
}

/// One factorization of `h`, as a word.
pub fn homogfac_word<F: FactorField>(h: &WeylPoly<F>) -> Result<FactorWord<F>> {
    let ctx = h.ctx();
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(c) = h.as_constant() {
        return Ok(FactorWord {
            unit: c,
            tokens: Vec::new(),
            ctx: ctx.clone(),
        });
    }
    let (hat, letter, k) = trailing(h)?;
    let body = theta_rewrite(&hat)?.body;
    let fac = F::factor_upoly(&body)?;
    let mut unit = fac.unit.clone();
    let mut tokens = Vec::new();
    for f in fac.flattened() {
        match split_theta_like(&f, ctx) {
            Some((a, b, c)) => {
                unit = unit.mul(&c);
                tokens.push(Token::letter(a));
                tokens.push(Token::letter(b));
            }
            None => tokens.push(Token::Theta(f)),
        }
    }
    tokens.extend(std::iter::repeat_n(Token::letter(letter), k as usize));
    Ok(FactorWord {
        unit,
        tokens,
        ctx: ctx.clone(),
    })
}

/// One factorization of a homogeneous `h`, verified.
pub fn homogfac<F: FactorField>(h: &WeylPoly<F>) -> Result<Factorization<F>> {
    let fac = homogfac_word(h)?.to_factorization();
    if !verify_factorization(h, &fac) {
        return Err(Error::VerificationFailed(format!("{h}")));
    }
    Ok(fac)
}

/// All words reachable from `seed` by moves, restricted to those with no
/// splittable token, ordered by canonical key.
pub fn closure<F: Field>(seed: &FactorWord<F>) -> Vec<FactorWord<F>> {
    let moves = Moves::new(&seed.ctx);
    let mut seen: HashSet<Vec<Token<F>>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut found = Vec::new();
    seen.insert(seed.tokens.clone());
    queue.push_back(seed.clone());
    while let Some(w) = queue.pop_front() {
        for n in moves.neighbors(&w) {
            if seen.insert(n.tokens.clone()) {
                queue.push_back(n);
            }
        }
        if !w.has_splittable() {
            found.push(w);
        }
    }
    sort_words(found)
}

fn sort_words<F: Field>(words: Vec<FactorWord<F>>) -> Vec<FactorWord<F>> {
    let mut cache: HashMap<UPoly<F>, (F, WeylPoly<F>)> = HashMap::new();
    let mut keyed: Vec<_> = words
        .into_iter()
        .map(|w| {
            let mut unit = w.unit.clone();
            let mut key = Vec::with_capacity(w.tokens.len());
            for t in &w.tokens {
                let (lc, p) = match t {
                    Token::Theta(f) => cache
                        .entry(f.clone())
                        .or_insert_with(|| expand_token(t, &w.ctx).monic())
                        .clone(),
                    _ => expand_token(t, &w.ctx).monic(),
                };
                unit = unit.mul(&lc);
                key.push(p.terms().map(|(k, c)| (*k, c.clone())).collect::<Vec<_>>());
            }
            ((unit, key), w)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, w)| w).collect()
}

/// Every factorization of `h` up to units as words, ordered canonically.
pub fn homogfac_all_words<F: FactorField>(h: &WeylPoly<F>) -> Result<Vec<FactorWord<F>>> {
    Ok(closure(&homogfac_word(h)?))
}

/// All factorizations without the verification gate.
pub fn homogfac_all_unchecked<F: FactorField>(h: &WeylPoly<F>) -> Result<Vec<Factorization<F>>> {
    Ok(homogfac_all_words(h)?
        .par_iter()
        .map(FactorWord::to_factorization)
        .collect())
}

/// All factorizations of `h` up to units; each one is re-multiplied and
/// compared with `h` before being returned.
pub fn homogfac_all<F: FactorField>(h: &WeylPoly<F>) -> Result<Vec<Factorization<F>>> {
    let all = homogfac_all_unchecked(h)?;
    if let Some(bad) = all.par_iter().find_any(|f| !verify_factorization(h, f)) {
        let shown: Vec<String> = bad.factors.iter().map(|f| f.to_string()).collect();
        return Err(Error::VerificationFailed(format!(
            "{} * [{}] != {h}",
            bad.unit,
            shown.join(", ")
        )));
    }
    Ok(all)
}

/// `unit · f_1 ⋯ f_n == h`.
pub fn verify_factorization<F: Field>(h: &WeylPoly<F>, fac: &Factorization<F>) -> bool {
    h.ctx() == &fac.ctx && fac.factors.iter().all(|f| f.ctx() == h.ctx()) && &fac.product() == h
}

/// Whether one move from any member, followed by splitting, lands back in the
/// set.
pub fn is_closure_stable<F: Field>(words: &[FactorWord<F>]) -> bool {
    let Some(first) = words.first() else {
        return true;
    };
    let moves = Moves::new(&first.ctx);
    let keys: HashSet<_> = words.iter().map(canonical_word).collect();
    words.iter().all(|w| {
        moves
            .neighbors(w)
            .iter()
            .all(|n| keys.contains(&canonical_word(&n.refine())))
    })
}
