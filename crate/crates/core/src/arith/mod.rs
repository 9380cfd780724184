//! Exact coefficient arithmetic.
//!
//! Two coefficient fields are supported: the rationals and the rational
//! function field in a transcendental `q`. Both implement [`Field`], which is
//! the only interface the algebra and factorization code relies on.

mod intpoly;
mod ratfunc;
mod upoly;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use intpoly::IntPoly;
pub use ratfunc::RatFunc;
pub use upoly::UPoly;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A field with exact, canonical element representation.
///
/// Equal elements must have identical representations so that `Eq`, `Hash`
/// and `Ord` can be derived structurally.
pub trait Field: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    /// Division. Panics on a zero divisor, like integer division.
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero in coefficient field"))
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, allowing negative exponents for nonzero elements.
    fn powi(&self, exp: i64) -> Self {
        if exp >= 0 {
            self.pow(exp as u64)
        } else {
            self.inv()
                .expect("negative power of zero")
                .pow(exp.unsigned_abs())
        }
    }

    /// Returns the rational value if this element is a constant.
    fn as_rational(&self) -> Option<Rational>;
}

impl Field for Rational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Shorthand for building a rational from a numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
