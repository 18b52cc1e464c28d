//! `weightconj` — evaluate weight functions and their multiplicative
//! Legendre conjugates, tabulate them to CSV, estimate growth indices,
//! compare two weights, and run the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
//! 3 I/O error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weightconj::conjugate::{upper_welldef_check, ConjOptions, ConjValue, WellDefStatus};
use weightconj::expr::{parse_expr, ExprOptions};
use weightconj::extreal::ExtReal::{self, Finite};
use weightconj::indices::{gamma_analytic, gamma_lower, gamma_upper, IndexOptions};
use weightconj::sequences::Relation;
use weightconj::verify::{self, CheckStatus};
use weightconj::weightfn::{ProbeSpec, WeightFunction};

#[derive(Parser)]
#[command(name = "weightconj", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every expression-taking command.
#[derive(Args, Clone)]
struct ExprArgs {
    /// Weight expression, e.g. "lconj(assoc(g1.seq),mono(2))".
    #[arg(long)]
    expr: String,
    /// Directory against which assoc(FILE) paths are resolved.
    #[arg(long, value_name = "DIR", default_value = ".")]
    seq: PathBuf,
    /// Truncate (or extend, for closed-form tails) loaded sequence tables
    /// to this depth.
    #[arg(long, value_name = "P")]
    depth: Option<usize>,
    /// Grid density for conjugates that have no exact route.
    #[arg(long, value_name = "N")]
    grid_per_decade: Option<usize>,
}

impl ExprArgs {
    fn options(&self) -> ExprOptions {
        let mut conj = ConjOptions::default();
        if let Some(n) = self.grid_per_decade {
            conj.points_per_decade = n;
        }
        ExprOptions {
            base_dir: self.seq.clone(),
            conj,
            depth: self.depth,
        }
    }

    fn parse(&self) -> Result<WeightFunction, String> {
        parse_expr(&self.expr, &self.options()).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression at a single argument.
    Eval {
        #[command(flatten)]
        expr: ExprArgs,
        /// Argument t ≥ 0.
        #[arg(long)]
        t: f64,
    },
    /// Tabulate an expression over a uniform grid as CSV (`t,value`).
    Table {
        #[command(flatten)]
        expr: ExprArgs,
        /// Lower end of the t range.
        #[arg(long)]
        t_min: f64,
        /// Upper end of the t range (must exceed --t-min).
        #[arg(long)]
        t_max: f64,
        /// Number of grid points (≥ 2).
        #[arg(long, default_value_t = 101)]
        count: usize,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print growth-index brackets for an expression.
    Indices {
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Run the verification suite and write its report CSV.
    Verify {
        /// Only run checks whose id contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Report file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the asymptotic relation between two expressions.
    Compare {
        #[command(flatten)]
        expr: ExprArgs,
        /// Second expression (same grammar and options as --expr).
        #[arg(long)]
        expr2: String,
        /// Slack when reporting the comparison constants.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn write_out(out: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn bracket(lo: ExtReal, hi: ExtReal) -> String {
    format!("[{lo}, {hi}]")
}

fn main() -> ExitCode {
    weightconj::parallel::init_thread_cap();
    let cli = Cli::parse();

    match cli.command {
        Command::Eval { expr, t } => {
            let f = match expr.parse() {
                Ok(f) => f,
                Err(e) => return fail(2, &e),
            };
            match f.eval_conj(Finite(t)) {
                Ok(ConjValue::Value(v)) => println!("{v}"),
                Ok(ConjValue::Divergent) => {
                    println!("inf");
                    eprintln!("note: the supremum diverges at t = {t}; the value is +inf");
                }
                Err(e) => return fail(2, &e.to_string()),
            }
            ExitCode::SUCCESS
        }
        Command::Table {
            expr,
            t_min,
            t_max,
            count,
            out,
        } => {
            if !(t_min < t_max) || count < 2 {
                return fail(2, "table requires --t-min < --t-max and --count >= 2");
            }
            let f = match expr.parse() {
                Ok(f) => f,
                Err(e) => return fail(2, &e),
            };
            let mut csv = String::from("t,value\n");
            for i in 0..count {
                let t = t_min + (t_max - t_min) * i as f64 / (count - 1) as f64;
                match f.eval(Finite(t)) {
                    Ok(v) => csv.push_str(&format!("{t},{v}\n")),
                    Err(e) => return fail(2, &e.to_string()),
                }
            }
            match write_out(out.as_ref(), &csv) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(3, &e),
            }
        }
        Command::Indices { expr } => {
            let f = match expr.parse() {
                Ok(f) => f,
                Err(e) => return fail(2, &e),
            };
            let opts = IndexOptions::default();
            let (lo, hi) = match (gamma_lower(&f, &opts), gamma_upper(&f, &opts)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return fail(2, &e.to_string()),
            };
            println!("gamma_lower: {}", bracket(lo.lo, lo.hi));
            println!("gamma_upper: {}", bracket(hi.lo, hi.hi));
            match gamma_analytic(&f) {
                Some((a, b)) => println!("analytic: ({a}, {b})"),
                None => println!("analytic: none"),
            }
            ExitCode::SUCCESS
        }
        Command::Verify { filter, out } => {
            let reports = verify::run_suite(filter.as_deref());
            let csv = verify::to_csv(&reports);
            if let Err(e) = write_out(out.as_ref(), &csv) {
                return fail(3, &e);
            }
            let failed = reports
                .iter()
                .filter(|r| matches!(r.status, CheckStatus::Fail(_)))
                .count();
            let skipped = reports
                .iter()
                .filter(|r| matches!(r.status, CheckStatus::Skipped(_)))
                .count();
            eprintln!(
                "{} checks: {} passed, {failed} failed, {skipped} skipped",
                reports.len(),
                reports.len() - failed - skipped,
            );
            if failed > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Compare { expr, expr2, tol } => {
            let f = match expr.parse() {
                Ok(f) => f,
                Err(e) => return fail(2, &e),
            };
            let g = match parse_expr(&expr2, &expr.options()) {
                Ok(g) => g,
                Err(e) => return fail(2, &e.to_string()),
            };
            let verdict = match f.relate(&g, &ProbeSpec::default()) {
                Ok(v) => v,
                Err(e) => return fail(2, &e.to_string()),
            };
            let relation = match verdict.relation {
                Relation::Equivalent => "equivalent",
                Relation::Preceq => "second is O(first)",
                Relation::Triangle => "second is o(first)",
                Relation::NotComparable => "not comparable",
            };
            println!("relation: {relation}");
            println!(
                "constants: c_upper = {}, c_limsup = {} (tol {tol})",
                verdict.c_upper, verdict.c_limsup
            );
            match upper_welldef_check(&f, &g, &ConjOptions::default()) {
                Ok(cert) => {
                    let status = match cert.status {
                        WellDefStatus::WellDefined => "well defined".to_string(),
                        WellDefStatus::WellDefinedUpTo(t0) => {
                            format!("well defined up to t = {t0}")
                        }
                        WellDefStatus::IllDefined => "ill defined".to_string(),
                        WellDefStatus::Unknown => "unknown".to_string(),
                    };
                    println!("upper conjugate (first over second): {status}");
                }
                Err(e) => return fail(2, &e.to_string()),
            }
            ExitCode::SUCCESS
        }
    }
}
