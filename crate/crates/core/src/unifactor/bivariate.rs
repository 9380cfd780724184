//! Factorization over the rational function field `Q(q)`.
//!
//! The input is cleared to a primitive polynomial in `Z[q][θ]`, specialized at
//! an integer `q = q0`, factored over `Q`, lifted `t`-adically with
//! `t = q - q0`, and recombined by trial division in `Z[q][θ]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zassenhaus::factor_squarefree_primitive;
use crate::arith::{Field, IntPoly, RatFunc, Rational, UPoly};
use crate::error::{Error, Result};

/// Evaluation points tried in order.
const POINTS: [i64; 20] = [
    2, 3, 5, -2, -3, 7, -5, 11, -7, 13, -11, 17, -13, 19, 4, -4, 6, -6, 8, -8,
];

/// How many lucky points to compare before committing to one.
const LUCKY_POINTS: usize = 3;

/// Polynomial in `θ` with coefficients in `Z[q]`, ascending in `θ`.
pub(crate) type ZqPoly = Vec<IntPoly>;

/// Truncated power series in `t` with coefficients in `Q[θ]`.
type Series = Vec<UPoly<Rational>>;

fn lcm(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a.mul(b).div_exact(&a.gcd(b)).unwrap()
}

/// Clear denominators and content; the leading coefficient's leading
/// coefficient is made positive.
pub(crate) fn to_zq(f: &UPoly<RatFunc>) -> ZqPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(IntPoly::one(), |acc, c| lcm(&acc, c.den()));
    let raw: ZqPoly = f
        .coeffs()
        .iter()
        .map(|c| c.num().mul(&den.div_exact(c.den()).unwrap()))
        .collect();
    primitive(raw)
}

fn primitive(raw: ZqPoly) -> ZqPoly {
    let cont = raw
        .iter()
        .fold(IntPoly::zero(), |acc, c| acc.gcd(c));
    let sign = raw.last().is_some_and(|c| c.lc().is_negative());
    raw.iter()
        .map(|c| {
            let c = c.div_exact(&cont).unwrap();
            if sign {
                c.neg()
            } else {
                c
            }
        })
        .collect()
}

pub(crate) fn from_zq(g: &[IntPoly]) -> UPoly<RatFunc> {
    UPoly::new(g.iter().cloned().map(RatFunc::from_poly).collect())
        .monic()
        .1
}

fn q_degree(g: &[IntPoly]) -> usize {
    g.iter().filter_map(IntPoly::degree).max().unwrap_or(0)
}

/// Exact division in `Z[q][θ]`.
pub(crate) fn zq_div_exact(a: &[IntPoly], b: &[IntPoly]) -> Option<ZqPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![IntPoly::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        if rem[k + db].is_zero() {
            continue;
        }
        let qk = rem[k + db].div_exact(&b[db])?;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(&qk.mul(bj));
        }
        quot[k] = qk;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

fn image(g: &[IntPoly], q0: &BigInt) -> IntPoly {
    IntPoly::new(g.iter().map(|c| c.eval(q0)).collect())
}

fn is_squarefree_int(f: &IntPoly) -> bool {
    f.gcd(&f.derivative()).is_constant()
}

/// First integer point where the specialization keeps its degree and stays
/// squarefree, among the first `tries` candidates.
pub(crate) fn lucky_point(g: &[IntPoly], tries: usize) -> Option<BigInt> {
    POINTS.iter().take(tries).map(|&q0| BigInt::from(q0)).find(|q0| {
        !g.last().unwrap().eval(q0).is_zero() && is_squarefree_int(&image(g, q0))
    })
}

fn to_monic_rational(f: &IntPoly) -> UPoly<Rational> {
    UPoly::new(
        f.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
    .monic()
    .1
}

/// Irreducible factors over `Q(q)` of a squarefree nonconstant polynomial,
/// each monic.
pub fn factor_squarefree(f: &UPoly<RatFunc>) -> Result<Vec<UPoly<RatFunc>>> {
    let g = to_zq(f);
    if g.len() <= 2 {
        return Ok(vec![from_zq(&g)]);
    }
    let mut best: Option<(BigInt, Vec<IntPoly>)> = None;
    let mut lucky = 0;
    for &q0 in POINTS.iter() {
        let q0 = BigInt::from(q0);
        if g.last().unwrap().eval(&q0).is_zero() {
            continue;
        }
        let img = image(&g, &q0);
        if !is_squarefree_int(&img) {
            continue;
        }
        let mut facs = factor_squarefree_primitive(&img.normalized_primitive());
        facs.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((q0, facs));
        }
        lucky += 1;
        if lucky >= LUCKY_POINTS || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let Some((q0, facs)) = best else {
        return Err(Error::RetryBudgetExhausted {
            attempts: POINTS.len(),
        });
    };
    if facs.len() == 1 {
        return Ok(vec![from_zq(&g)]);
    }
    let modular: Vec<UPoly<Rational>> = facs.iter().map(to_monic_rational).collect();
    let lc_deg = g.last().unwrap().degree().unwrap();
    let prec = q_degree(&g) + lc_deg + 1;
    let shifted: ZqPoly = g.iter().map(|c| c.taylor_shift(&q0)).collect();
    let target = monic_series(&shifted, prec);
    let mut lifted = Vec::with_capacity(modular.len());
    lift_tree(&target, &modular, prec, &mut lifted);
    let found = recombine(g, lifted, &q0, prec);
    Ok(found.iter().map(|h| from_zq(h)).collect())
}

fn rat_poly_coeff(p: &IntPoly, j: usize) -> Rational {
    BigRational::from_integer(p.coeff(j))
}

/// Inverse of a power series with nonzero constant term, to `prec` terms.
fn series_inverse(a: &[Rational], prec: usize) -> Vec<Rational> {
    let a0_inv = a[0].recip();
    let mut inv = vec![a0_inv.clone()];
    for j in 1..prec {
        let mut acc = <BigRational as Zero>::zero();
        for i in 1..=j.min(a.len() - 1) {
            acc += &a[i] * &inv[j - i];
        }
        inv.push(-(acc * &a0_inv));
    }
    inv
}

/// `G / lc_θ(G)` as a series in `t`; every term past the first has lower
/// θ-degree than the leading one.
fn monic_series(g: &[IntPoly], prec: usize) -> Series {
    let lc = g.last().unwrap();
    let lc_series: Vec<Rational> = (0..prec.max(1)).map(|j| rat_poly_coeff(lc, j)).collect();
    let inv = series_inverse(&lc_series, prec);
    let slices: Series = (0..prec)
        .map(|j| UPoly::new(g.iter().map(|c| rat_poly_coeff(c, j)).collect()))
        .collect();
    (0..prec)
        .map(|j| {
            (0..=j).fold(UPoly::zero(), |acc, i| {
                if Field::is_zero(&inv[i]) || slices[j - i].is_zero() {
                    acc
                } else {
                    acc.add(&slices[j - i].scale(&inv[i]))
                }
            })
        })
        .collect()
}

fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    (0..prec)
        .map(|j| {
            (0..=j).fold(UPoly::zero(), |acc, i| match (a.get(i), b.get(j - i)) {
                (Some(x), Some(y)) if !x.is_zero() && !y.is_zero() => acc.add(&x.mul(y)),
                _ => acc,
            })
        })
        .collect()
}

fn product(fs: &[UPoly<Rational>]) -> UPoly<Rational> {
    fs.iter().fold(UPoly::one(), |acc, f| acc.mul(f))
}

/// Split the monic series `target` along the factor tree of `modular`.
fn lift_tree(target: &Series, modular: &[UPoly<Rational>], prec: usize, out: &mut Vec<Series>) {
    if modular.len() == 1 {
        out.push(target.clone());
        return;
    }
    let (left, right) = modular.split_at(modular.len() / 2);
    let a0 = product(left);
    let b0 = product(right);
    let (_, s, t) = a0.ext_gcd(&b0);
    let mut a: Series = vec![a0.clone()];
    let mut b: Series = vec![b0.clone()];
    for j in 1..prec {
        let mut e = target[j].clone();
        for l in 1..j {
            e = e.sub(&a[l].mul(&b[j - l]));
        }
        if e.is_zero() {
            a.push(UPoly::zero());
            b.push(UPoly::zero());
            continue;
        }
        a.push(e.mul(&t).rem(&a0).unwrap());
        b.push(e.mul(&s).rem(&b0).unwrap());
    }
    lift_tree(&a, left, prec, out);
    lift_tree(&b, right, prec, out);
}

/// Rational Taylor shift `p(var + c)`.
fn taylor_shift_rat(p: &mut [Rational], c: &Rational) {
    let n = p.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &p[j + 1] * c;
            p[j] += t;
        }
    }
}

/// Turn `lc · Π U_i` back into a primitive element of `Z[q][θ]`.
fn candidate(series: &Series, q0: &BigInt, prec: usize) -> ZqPoly {
    let deg = series[0].degree().unwrap();
    let back = BigRational::from_integer(-q0);
    let coeffs: Vec<Vec<Rational>> = (0..=deg)
        .map(|d| {
            let mut col: Vec<Rational> = (0..prec)
                .map(|j| series.get(j).map_or_else(<BigRational as Zero>::zero, |s| s.coeff(d)))
                .collect();
            taylor_shift_rat(&mut col, &back);
            col
        })
        .collect();
    let den = coeffs
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let raw: ZqPoly = coeffs
        .iter()
        .map(|col| IntPoly::new(col.iter().map(|c| (c * &den).to_integer()).collect()))
        .collect();
    primitive(raw)
}

fn recombine(mut g: ZqPoly, mut rest: Vec<Series>, q0: &BigInt, prec: usize) -> Vec<ZqPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= rest.len() {
        for combo in super::zassenhaus::combinations(rest.len(), size) {
            let lc_t = g.last().unwrap().taylor_shift(q0);
            let lc_series: Series = (0..prec)
                .map(|j| UPoly::constant(rat_poly_coeff(&lc_t, j)))
                .collect();
            let prod = combo
                .iter()
                .fold(lc_series, |acc, &i| series_mul(&acc, &rest[i], prec));
            let cand = candidate(&prod, q0, prec);
            if q_degree(&cand) > q_degree(&g) {
                continue;
            }
            if let Some(quot) = zq_div_exact(&g, &cand) {
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
    if g.len() > 1 {
        found.push(primitive(g));
    }
    found
}
