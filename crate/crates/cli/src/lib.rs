//! Library side of the `weylfac` command-line tool.

pub mod bench;
pub mod commands;
pub mod parser;

use std::str::FromStr;

use weylfac::{AlgebraCtx, RatFunc, Rational};

use commands::CliError;

/// The algebra selected on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ctx {
    /// Weyl algebra or q-Weyl algebra with a numeric `q`.
    Numeric(AlgebraCtx<Rational>),
    /// q-Weyl algebra with `q` transcendental.
    Symbolic(AlgebraCtx<RatFunc>),
}

/// Resolve `--algebra` and `--q`.
pub fn make_ctx(algebra: &str, q: Option<&str>) -> Result<Ctx, CliError> {
    let q = q
        .map(|s| {
            Rational::from_str(s.trim())
                .map_err(|_| CliError::Usage(format!("--q expects a rational number, got '{s}'")))
        })
        .transpose()?;
    match (algebra, q) {
        ("weyl", None) => Ok(Ctx::Numeric(AlgebraCtx::weyl())),
        ("weyl", Some(q)) if q == Rational::from_integer(1.into()) => Ok(Ctx::Numeric(AlgebraCtx::weyl())),
        ("weyl", Some(_)) => Err(CliError::Usage("--q is only valid with --algebra qweyl".into())),
        ("qweyl", None) => Ok(Ctx::Symbolic(AlgebraCtx::q_symbolic())),
        ("qweyl", Some(q)) => AlgebraCtx::q_numeric(q)
            .map(Ctx::Numeric)
            .map_err(|e| CliError::Usage(e.to_string())),
        (other, _) => Err(CliError::Usage(format!("unknown algebra '{other}'"))),
    }
}
