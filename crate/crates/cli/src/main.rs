use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{CommandFactory, Parser, Subcommand};

use ramanujan_cli::format::fmt_f64;
use ramanujan_cli::verify::{bound_methods, DEFAULT_GRID, DEFAULT_SEED};
use ramanujan_cli::{
    constants_ledger, emit_table, run_verify, GridSpec, TableFormat, TableKind, VerifyConfig,
};
use ramanujan_core::analysis::{
    comparison, crossings, delta_estimate, h3_eval, h_eval, x0_root, x2_root, Comparison,
    DEFAULT_ROOT_TOL,
};
use ramanujan_core::bounds::bound;
use ramanujan_core::polygamma::b_fn;
use ramanujan_core::ramanujan::{f_eval, r_eval};
use ramanujan_core::{Error, EvalMethod};

#[derive(Parser)]
#[command(
    name = "ramanujan",
    version,
    about = "Evaluate and verify bounds for the Ramanujan R-function"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print named constants next to their reference digits.
    Constants,
    /// Evaluate one function at one point.
    Eval {
        #[arg(long = "fn", value_parser = ["R", "B", "f", "F1", "F2", "F3", "H", "H3"])]
        function: String,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value = "auto")]
        method: EvalMethod,
    },
    /// Print every bound for R at one point.
    Bounds {
        #[arg(long)]
        x: f64,
        /// Order of the polynomial and envelope bounds.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Locate x0, x1, x2, the sharp constant delta and the crossing points.
    Roots,
    /// Write a CSV or JSON table.
    Table {
        #[arg(long)]
        what: TableKind,
        #[arg(long, default_value_t = 0.005)]
        from: f64,
        #[arg(long, default_value_t = 0.5)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Treat advisory checks as required.
        #[arg(long)]
        strict: bool,
        /// Also write the report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Failures caused by the arguments rather than the computation.
fn is_usage_error(err: &anyhow::Error) -> bool {
    matches!(
        err.downcast_ref::<Error>(),
        Some(Error::Domain { .. } | Error::Parameter { .. } | Error::Index { .. })
    ) || err.downcast_ref::<ramanujan_cli::ConfigError>().is_some()
        || matches!(
            err.downcast_ref::<ramanujan_cli::table::TableError>(),
            Some(
                ramanujan_cli::table::TableError::Range { .. }
                    | ramanujan_cli::table::TableError::Points(_)
            )
        )
}

fn eval(function: &str, x: f64, method: EvalMethod) -> anyhow::Result<()> {
    let (value, method, err) = match function {
        "R" => {
            let v = r_eval(x, method)?;
            (v.value, Some(v.method), v.est_abs_err)
        }
        "f" => {
            let v = f_eval(x, method)?;
            (v.value, Some(v.method), v.est_abs_err)
        }
        "B" => (b_fn(x)?, None, f64::NAN),
        "F1" => (comparison(Comparison::F1, x)?, None, f64::NAN),
        "F2" => (comparison(Comparison::F2, x)?, None, f64::NAN),
        "F3" => (comparison(Comparison::F3, x)?, None, f64::NAN),
        "H" => (h_eval(x)?, None, f64::NAN),
        _ => (h3_eval(x)?, None, f64::NAN),
    };
    println!("{function}({}) = {}", fmt_f64(x), fmt_f64(value));
    if let Some(m) = method {
        println!("method {m}, estimated error {}", fmt_f64(err));
    }
    Ok(())
}

fn bounds(x: f64, n: Option<u32>) -> anyhow::Result<()> {
    let delta = delta_estimate(DEFAULT_ROOT_TOL)?.delta;
    let r = r_eval(x, EvalMethod::Auto)?.value;
    println!("R({}) = {}", fmt_f64(x), fmt_f64(r));
    println!(
        "{:<18} {:>24} {:>24} {:>24}",
        "method", "lower", "upper", "gap"
    );
    let methods = match n {
        None => bound_methods(),
        Some(n) => {
            use ramanujan_core::BoundMethod::*;
            vec![
                SinePoly,
                OriginPoly(n),
                CenterPoly(n),
                Multiplicative,
                Additive,
                Envelope(n),
            ]
        }
    };
    for m in methods {
        let p = bound(m, x, delta)?;
        println!(
            "{:<18} {:>24} {:>24} {:>24}",
            m.name(),
            fmt_f64(p.lower),
            fmt_f64(p.upper),
            fmt_f64(p.gap())
        );
    }
    Ok(())
}

fn roots() -> anyhow::Result<()> {
    let tol = DEFAULT_ROOT_TOL;
    let x0 = x0_root(tol)?;
    let d = delta_estimate(tol)?;
    let x2 = x2_root(tol)?;
    let c = crossings(d.delta, tol)?;
    let line = |name: &str, v: f64| println!("{name:<8} {}", fmt_f64(v));
    line("x0", x0.x);
    line("x1", d.x1);
    line("delta", d.delta);
    line("|H(x1)|", d.residual_h);
    line("x2", x2.x);
    line("F2(x2)", comparison(Comparison::F2, x2.x)?);
    line("x5", c.x5);
    line("x6", c.x6);
    line("x7", c.x7);
    line("x8", c.x8);
    line("x9", c.x9);
    line("x10", c.x10);
    Ok(())
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Constants => {
            println!("{:<14} {:>24}  reference", "name", "computed");
            for e in constants_ledger()? {
                println!(
                    "{:<14} {:>24}  {}",
                    e.name,
                    fmt_f64(e.computed),
                    e.reference
                );
            }
        }
        Command::Eval {
            function,
            x,
            method,
        } => eval(&function, x, method)?,
        Command::Bounds { x, n } => bounds(x, n)?,
        Command::Roots => roots()?,
        Command::Table {
            what,
            from,
            to,
            points,
            format,
            out,
        } => {
            let grid = GridSpec { from, to, points };
            emit_table(what, &grid, format, &out)?;
        }
        Command::Verify {
            grid,
            seed,
            strict,
            report,
        } => {
            let config = VerifyConfig {
                grid_size: grid,
                seed,
                strict,
                ..VerifyConfig::default()
            };
            let result = run_verify(&config)?;
            print!("{}", result.render_text());
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&result.to_json())? + "\n";
                std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            return Ok(ExitCode::from(result.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_usage_error(&err) {
                eprintln!();
                eprintln!("{}", Cli::command().render_usage());
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
