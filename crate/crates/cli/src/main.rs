use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use weylfac::{AlgebraCtx, FactorField};
use weylfac_cli::bench::{format_result, parse_suite, run_case, BenchResult};
use weylfac_cli::commands::{cmd_expand, cmd_factor, CliError, Verify};
use weylfac_cli::{make_ctx, Ctx};

#[derive(Parser)]
#[command(name = "weylfac", version, about = "Factor homogeneous operators in the first Weyl and q-Weyl algebras")]
struct Cli {
    /// Algebra: weyl (dx = xd + 1) or qweyl (dx = q xd + 1).
    #[arg(long, value_enum, default_value_t = Algebra::Weyl, global = true)]
    algebra: Algebra,
    /// Fix q to a nonzero rational number instead of keeping it symbolic.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Report verification failures instead of aborting.
    #[arg(long, global = true)]
    verify_off: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Weyl,
    Qweyl,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor a homogeneous polynomial.
    Factor {
        expr: String,
        /// List every factorization up to units.
        #[arg(long)]
        all: bool,
    },
    /// Print the normal form of an expression.
    Expand { expr: String },
    /// Run a benchmark suite and compare factorization counts.
    Bench { suite: PathBuf },
}

/// Write to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn factor<F: FactorField>(cli: &Cli, expr: &str, all: bool, ctx: &AlgebraCtx<F>) -> Result<(), CliError> {
    let verify = if cli.verify_off { Verify::Report } else { Verify::Gate };
    let rec = cmd_factor(expr, ctx, all, verify)?;
    if cli.json {
        emit(&format!("{}\n", rec.to_json()));
    } else {
        emit(&rec.to_text());
        if !rec.verified {
            eprintln!("warning: verification failed");
        }
    }
    Ok(())
}

fn bench_cases<F: FactorField>(cli: &Cli, text: &str, ctx: &AlgebraCtx<F>) -> Result<(), CliError> {
    let cases = parse_suite(text)?;
    let mut results: Vec<BenchResult> = Vec::with_capacity(cases.len());
    for case in &cases {
        let r = run_case(case, ctx)?;
        if !cli.json {
            emit(&format!("{}\n", format_result(&r)));
        }
        results.push(r);
    }
    if cli.json {
        let rows: Vec<_> = results
            .iter()
            .map(|r| {
                json!({
                    "name": r.case.name,
                    "count": r.count,
                    "expected": r.case.expected,
                    "ms": r.ms,
                    "ok": r.ok(),
                })
            })
            .collect();
        emit(&format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()));
    }
    let failed = results.iter().filter(|r| !r.ok()).count();
    if failed > 0 {
        return Err(CliError::BenchMismatch {
            failed,
            total: results.len(),
        });
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let algebra = match cli.algebra {
        Algebra::Weyl => "weyl",
        Algebra::Qweyl => "qweyl",
    };
    let ctx = make_ctx(algebra, cli.q.as_deref())?;
    match &cli.cmd {
        Cmd::Factor { expr, all } => match &ctx {
            Ctx::Numeric(c) => factor(cli, expr, *all, c),
            Ctx::Symbolic(c) => factor(cli, expr, *all, c),
        },
        Cmd::Expand { expr } => {
            let out = match &ctx {
                Ctx::Numeric(c) => cmd_expand(expr, c)?,
                Ctx::Symbolic(c) => cmd_expand(expr, c)?,
            };
            emit(&format!("{out}\n"));
            Ok(())
        }
        Cmd::Bench { suite } => {
            let text = std::fs::read_to_string(suite)
                .map_err(|e| CliError::Io(format!("{}: {e}", suite.display())))?;
            match &ctx {
                Ctx::Numeric(c) => bench_cases(cli, &text, c),
                Ctx::Symbolic(c) => bench_cases(cli, &text, c),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
