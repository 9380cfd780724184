use std::io::Write;
use std::process::{Command, Output};

use proptest::prelude::*;
use weylfac::{AlgebraCtx, Field, RatFunc, Rational, WeylPoly};
use weylfac_cli::parser::parse_poly;

fn weylfac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylfac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factor_prints_unit_first() {
    let o = weylfac(&["factor", "x3d3+4x2d2+3xd"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[1, x, d, x2d2+2xd+1]\n");
    let o = weylfac(&["factor", "--all", "x3d3+4x2d2+3xd"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn expand_in_each_algebra() {
    assert_eq!(stdout(&weylfac(&["expand", "d*x"])), "xd+1\n");
    assert_eq!(stdout(&weylfac(&["--algebra", "qweyl", "expand", "d*x"])), "qxd+1\n");
    assert_eq!(stdout(&weylfac(&["--algebra", "qweyl", "--q", "-2", "expand", "d*x"])), "-2xd+1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(weylfac(&["factor", "x+d"]).status.code(), Some(2));
    assert_eq!(weylfac(&["factor", "x+"]).status.code(), Some(1));
    assert_eq!(weylfac(&["factor", "x + q"]).status.code(), Some(1));
    assert_eq!(weylfac(&["bogus"]).status.code(), Some(1));
    assert_eq!(weylfac(&["--help"]).status.code(), Some(0));
    assert_eq!(weylfac(&["bench", "/nonexistent/suite"]).status.code(), Some(1));
}

#[test]
fn parse_errors_report_column() {
    let o = weylfac(&["expand", "x + q"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("column 5"), "{err}");
}

#[test]
fn q_validation() {
    assert_eq!(weylfac(&["--algebra", "qweyl", "--q", "0", "expand", "x"]).status.code(), Some(1));
    assert_eq!(weylfac(&["--algebra", "qweyl", "--q", "abc", "expand", "x"]).status.code(), Some(1));
    assert_eq!(weylfac(&["--q", "2", "expand", "x"]).status.code(), Some(1));
    assert_eq!(weylfac(&["--q", "1", "expand", "x"]).status.code(), Some(0));
    assert_eq!(weylfac(&["--algebra", "qweyl", "--q", "3/4", "expand", "x"]).status.code(), Some(0));
}

#[test]
fn json_record() {
    let o = weylfac(&["--algebra", "qweyl", "--json", "factor", "--all", "d*x"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["input"], "d*x");
    assert_eq!(v["algebra"], "qweyl");
    assert!(v["q"].is_null());
    assert_eq!(v["verified"], true);
    assert!(v["ms"].as_f64().unwrap() >= 0.0);
    let facs = v["factorizations"].as_array().unwrap();
    assert_eq!(facs.len(), 1);
    assert_eq!(facs[0]["unit"], "1");
    assert_eq!(facs[0]["factors"], serde_json::json!(["d", "x"]));
}

fn suite(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn bench_outcomes() {
    let empty = suite("# nothing here\n");
    assert_eq!(weylfac(&["bench", empty.path().to_str().unwrap()]).status.code(), Some(0));

    let good = suite("ex ; x3d3+4x2d2+3xd ; 3\nm ; x2d2 ; 3\n");
    let o = weylfac(&["--json", "bench", good.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["name"], "ex");
    assert_eq!(v[0]["ok"], true);

    let bad = suite("ex ; x3d3+4x2d2+3xd ; 4\n");
    let o = weylfac(&["bench", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("MISMATCH"));

    let malformed = suite("ex ; x3d3\n");
    assert_eq!(weylfac(&["bench", malformed.path().to_str().unwrap()]).status.code(), Some(1));
}

fn roundtrip<F: Field>(terms: &[(u32, u32, i64, i64, i64)], ctx: &AlgebraCtx<F>) -> Result<(), TestCaseError> {
    let mut p = WeylPoly::zero(ctx);
    for &(a, b, c0, c1, den) in terms {
        let c = F::from_i64(c0)
            .add(&F::from_i64(c1).mul(ctx.q()))
            .mul(&F::from_rational(&Rational::new(1.into(), den.into())));
        p.add_term(a, b, c);
    }
    let text = p.to_string();
    let back = parse_poly(&text, ctx).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(back, p, "{}", text);
    Ok(())
}

proptest! {
    #[test]
    fn printed_polynomials_parse_back(
        terms in prop::collection::vec((0u32..=4, 0u32..=4, -5i64..=5, -3i64..=3, 1i64..=4), 0..=5)
    ) {
        roundtrip(&terms, &AlgebraCtx::weyl())?;
        roundtrip(&terms, &AlgebraCtx::q_numeric(Rational::new((-3).into(), 2.into())).unwrap())?;
        roundtrip(&terms, &AlgebraCtx::<RatFunc>::q_symbolic())?;
    }
}
