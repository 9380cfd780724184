//! Factorization of Z-graded homogeneous polynomials in the first Weyl
//! algebra `A1 = K<x,d | dx = xd + 1>` and the first q-Weyl algebra
//! `Q1 = K<x,d | dx = q xd + 1>`.
//!
//! A homogeneous element is reduced to a polynomial in the Euler operator
//! `θ = x d`, factored with a built-in commutative factorizer over `Q` or
//! `Q(q)`, and the commutative factors are turned back into noncommutative
//! factorizations. [`homog::homogfac`] returns one factorization and
//! [`homog::homogfac_all`] returns all of them up to units.

pub mod arith;
pub mod error;
pub mod homog;
pub mod theta;
pub mod unifactor;
pub mod weyl;

pub use arith::{Field, IntPoly, RatFunc, Rational, UPoly};
pub use error::{Error, Result};
pub use homog::{
    canonical_word, homogfac, homogfac_all, split_theta_like, verify_factorization, FactorWord,
    Factorization, Token,
};
pub use theta::{AffineMap, ShiftPoly, ThetaPoly};
pub use unifactor::{FactorField, UFactorization};
pub use weyl::{AlgebraCtx, Letter, Mode, WeylPoly};
