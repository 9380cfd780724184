//! Factorization of univariate polynomials over `Q` and `Q(q)`.

mod bivariate;
mod modp;
mod zassenhaus;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{Field, IntPoly, RatFunc, Rational, UPoly};
use crate::error::{Error, Result};

/// `unit * Π f_i^{e_i}` with every `f_i` monic and irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UFactorization<F: Field> {
    pub unit: F,
    pub factors: Vec<(UPoly<F>, usize)>,
}

impl<F: Field> UFactorization<F> {
    /// Multiply everything back together.
    pub fn expand(&self) -> UPoly<F> {
        self.factors
            .iter()
            .fold(UPoly::constant(self.unit.clone()), |acc, (f, e)| {
                acc.mul(&f.pow(*e as u32))
            })
    }

    /// Factors repeated according to multiplicity.
    pub fn flattened(&self) -> Vec<UPoly<F>> {
        self.factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.clone(), *e))
            .collect()
    }

    fn sorted(mut self) -> Self {
        self.factors.sort_by(|(a, ea), (b, eb)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.cmp(b))
                .then_with(|| ea.cmp(eb))
        });
        self
    }
}

/// Fields over which `K[θ]` can be factored.
pub trait FactorField: Field {
    fn factor_upoly(f: &UPoly<Self>) -> Result<UFactorization<Self>>;
}

impl FactorField for Rational {
    fn factor_upoly(f: &UPoly<Self>) -> Result<UFactorization<Self>> {
        factor_over_q(f)
    }
}

impl FactorField for RatFunc {
    fn factor_upoly(f: &UPoly<Self>) -> Result<UFactorization<Self>> {
        factor_over_qq(f)
    }
}

/// Squarefree decomposition (Yun): monic, pairwise coprime `a_i` with
/// `monic(f) = Π a_i^i`. Constants give an empty list.
pub fn squarefree_decompose<F: Field>(f: &UPoly<F>) -> Result<Vec<(UPoly<F>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic().1;
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0)?.0;
    let c = df.divrem(&a0)?.0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let b_next = b.divrem(&a)?.0;
        let c_next = d.divrem(&a)?.0;
        d = c_next.sub(&b_next.derivative());
        if !a.is_constant() {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    Ok(out)
}

fn to_int_poly(f: &UPoly<Rational>) -> IntPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect(),
    )
    .normalized_primitive()
}

fn to_monic(f: &IntPoly) -> UPoly<Rational> {
    UPoly::new(
        f.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
    .monic()
    .1
}

/// Complete factorization over `Q`.
pub fn factor_over_q(f: &UPoly<Rational>) -> Result<UFactorization<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(UFactorization {
            unit,
            factors: Vec::new(),
        });
    }
    for (part, e) in zassenhaus::squarefree_int(&to_int_poly(f)) {
        for g in zassenhaus::factor_squarefree_primitive(&part) {
            factors.push((to_monic(&g), e));
        }
    }
    Ok(UFactorization { unit, factors }.sorted())
}

/// Complete factorization over `Q(q)`.
pub fn factor_over_qq(f: &UPoly<RatFunc>) -> Result<UFactorization<RatFunc>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (unit, monic) = f.monic();
    if monic.is_constant() {
        return Ok(UFactorization {
            unit,
            factors: Vec::new(),
        });
    }
    // A squarefree specialization proves the input squarefree and skips Yun.
    let parts = if bivariate::lucky_point(&bivariate::to_zq(&monic), 4).is_some() {
        vec![(monic, 1)]
    } else {
        squarefree_decompose(&monic)?
    };
    let mut factors = Vec::new();
    for (part, e) in parts {
        for g in bivariate::factor_squarefree(&part)? {
            factors.push((g, e));
        }
    }
    Ok(UFactorization { unit, factors }.sorted())
}

/// Whether `f` is irreducible over its coefficient field.
pub fn is_irreducible<F: FactorField>(f: &UPoly<F>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let fac = F::factor_upoly(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}
