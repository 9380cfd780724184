use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use weylfac::homog::homogfac_all_unchecked;
use weylfac::{
    homogfac, homogfac_all, verify_factorization, AlgebraCtx, FactorField, Factorization, Mode,
    WeylPoly,
};

use crate::parser::{parse_poly, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] weylfac::Error),
    #[error("{0}")]
    Io(String),
    #[error("{failed} of {total} benchmark cases returned an unexpected count")]
    BenchMismatch { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Algebra(weylfac::Error::NotHomogeneous { .. }) => 2,
            CliError::Algebra(weylfac::Error::VerificationFailed(_)) => 3,
            CliError::Algebra(_) => 1,
            CliError::BenchMismatch { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationRecord {
    pub unit: String,
    pub factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub input: String,
    pub algebra: String,
    pub q: Option<String>,
    pub factorizations: Vec<FactorizationRecord>,
    pub ms: f64,
    pub verified: bool,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    /// One line per factorization, unit first: `[1, x, d, x2d2+2xd+1]`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.factorizations {
            out.push('[');
            out.push_str(&f.unit);
            for factor in &f.factors {
                out.push_str(", ");
                out.push_str(factor);
            }
            out.push_str("]\n");
        }
        out
    }
}

/// Verification policy for emitted factorizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verify {
    /// A failed check aborts the command.
    Gate,
    /// Checks still run; the outcome is reported in the record.
    Report,
}

pub fn algebra_name<F: weylfac::Field>(ctx: &AlgebraCtx<F>) -> (String, Option<String>) {
    match ctx.mode() {
        Mode::Weyl => ("weyl".into(), None),
        Mode::QWeylSymbolic => ("qweyl".into(), None),
        Mode::QWeylNumeric(q) => ("qweyl".into(), Some(q.to_string())),
    }
}

fn record<F: weylfac::Field>(f: &Factorization<F>) -> FactorizationRecord {
    FactorizationRecord {
        unit: f.unit.to_string(),
        factors: f.factors.iter().map(|p| p.to_string()).collect(),
    }
}

fn homogeneous<F: FactorField>(text: &str, ctx: &AlgebraCtx<F>) -> Result<WeylPoly<F>, CliError> {
    let h = parse_poly(text, ctx)?;
    h.homogeneous_degree()?;
    Ok(h)
}

/// Factor `text`: one factorization, or all of them with `all`.
pub fn cmd_factor<F: FactorField>(
    text: &str,
    ctx: &AlgebraCtx<F>,
    all: bool,
    verify: Verify,
) -> Result<OutputRecord, CliError> {
    let h = homogeneous(text, ctx)?;
    let start = Instant::now();
    let facs = match (all, verify) {
        (true, Verify::Gate) => homogfac_all(&h)?,
        (true, Verify::Report) => homogfac_all_unchecked(&h)?,
        (false, Verify::Gate) => vec![homogfac(&h)?],
        (false, Verify::Report) => {
            vec![weylfac::homog::homogfac_word(&h)?.to_factorization()]
        }
    };
    let verified = match verify {
        Verify::Gate => true,
        Verify::Report => facs.iter().all(|f| verify_factorization(&h, f)),
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    let (algebra, q) = algebra_name(ctx);
    Ok(OutputRecord {
        input: text.to_string(),
        algebra,
        q,
        factorizations: facs.iter().map(record).collect(),
        ms,
        verified,
    })
}

/// Normal form of `text`.
pub fn cmd_expand<F: weylfac::Field>(text: &str, ctx: &AlgebraCtx<F>) -> Result<String, CliError> {
    Ok(parse_poly(text, ctx)?.to_string())
}
