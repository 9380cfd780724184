//! Benchmark suites: one case per line, `name ; factored-expression ; count`.
//! Blank lines and lines starting with `#` are ignored.

use std::time::Instant;

use weylfac::{homogfac_all, AlgebraCtx, FactorField};

use crate::commands::CliError;
use crate::parser::parse_poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchCase {
    pub name: String,
    pub expr: String,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub case: BenchCase,
    pub count: usize,
    pub ms: f64,
}

impl BenchResult {
    pub fn ok(&self) -> bool {
        self.count == self.case.expected
    }
}

pub fn parse_suite(text: &str) -> Result<Vec<BenchCase>, CliError> {
    let mut cases = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(';').map(str::trim).collect();
        let bad = || CliError::Usage(format!("suite line {}: expected 'name ; expr ; count'", lineno + 1));
        let [name, expr, count] = parts[..] else {
            return Err(bad());
        };
        let expected = count.parse().map_err(|_| bad())?;
        cases.push(BenchCase {
            name: name.to_string(),
            expr: expr.to_string(),
            expected,
        });
    }
    Ok(cases)
}

/// Expand and factor one case completely.
pub fn run_case<F: FactorField>(case: &BenchCase, ctx: &AlgebraCtx<F>) -> Result<BenchResult, CliError> {
    let h = parse_poly(&case.expr, ctx)?;
    let start = Instant::now();
    let count = homogfac_all(&h)?.len();
    Ok(BenchResult {
        case: case.clone(),
        count,
        ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

pub fn format_result(r: &BenchResult) -> String {
    format!(
        "{:<8} {:>6} fcts (expected {:>4})  {:>10.1} ms  {}",
        r.case.name,
        r.count,
        r.case.expected,
        r.ms,
        if r.ok() { "ok" } else { "MISMATCH" }
    )
}
