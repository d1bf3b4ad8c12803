//! The `polybern` command line: sequence tables, identity checks and a
//! generating-function evaluator.
//!
//! [`run`] does all the work and returns the process exit code, so tests
//! can drive the tool in-process: 0 on success, 1 when a verification or
//! evaluation fails, 2 on a usage error.

pub mod expr;
pub mod report;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polybern_core::rational::factorial;
use polybern_core::verify::{verify_identity, EvalPoint, Identity, RangeSpec};
use polybern_core::Rational;
use thiserror::Error;

use crate::table::{build_table, Convention, SequenceKind, TableFormat, TableRequest};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Parser)]
#[command(name = "polybern", version, about = "Exact poly-Bernoulli numbers of the second kind")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a table of exact sequence values.
    Table(TableArgs),
    /// Check an identity exactly over a parameter range.
    Verify(VerifyArgs),
    /// Expand a generating-function expression in t.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: SequenceKind,
    #[arg(short = 'n', long = "n-max")]
    n_max: usize,
    /// Polylogarithm order (poly2nd only).
    #[arg(short = 'k', allow_negative_numbers = true)]
    k: Option<i64>,
    /// Evaluation point, an integer or p/q.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    x: Option<Rational>,
    /// Coefficient convention (bernoulli2nd only).
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    /// Column of the Stirling triangle (stirling1 and stirling2 only).
    #[arg(long)]
    l: Option<usize>,
    /// Order of B_n^(alpha)(x) (higher-order only); defaults to alpha = n.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_identity)]
    identity: Identity,
    #[arg(short = 'n', long = "n-max")]
    n_max: usize,
    /// A single integer or an inclusive range `a..b`.
    #[arg(short = 'k', long = "k", value_parser = parse_k_range, allow_hyphen_values = true)]
    k: Option<KValues>,
    /// Comma-separated rationals; `x` checks the polynomial identity.
    #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
    x: Option<Points>,
    #[arg(long, value_enum, default_value_t)]
    format: ReportFormat,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    order: usize,
    /// Print n! c_n instead of the raw coefficient c_n.
    #[arg(long)]
    egf: bool,
}

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: num_bigint::BigInt = num
        .parse()
        .map_err(|_| format!("'{text}' is not a rational literal"))?;
    let den: num_bigint::BigInt = match den {
        Some(d) if !d.starts_with(['-', '+']) => d
            .parse()
            .map_err(|_| format!("'{text}' is not a rational literal"))?,
        Some(_) => return Err(format!("'{text}': denominator must be a positive integer")),
        None => num_traits::One::one(),
    };
    if num_traits::Zero::is_zero(&den) {
        return Err(format!("'{text}': zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_identity(text: &str) -> Result<Identity, String> {
    text.parse().map_err(|_| {
        let names: Vec<_> = Identity::ALL.iter().map(|i| i.name()).collect();
        format!("unknown identity '{text}' (expected one of {})", names.join(", "))
    })
}

#[derive(Debug, Clone)]
struct KValues(Vec<i64>);

#[derive(Debug, Clone)]
struct Points(Vec<EvalPoint>);

fn parse_k_range(text: &str) -> Result<KValues, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| format!("'{s}' is not an integer"))
    };
    match text.split_once("..") {
        None => Ok(KValues(vec![parse(text)?])),
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            if b - a > 10_000 {
                return Err(format!("range {a}..{b} is too wide"));
            }
            Ok(KValues((a..=b).collect()))
        }
    }
}

fn parse_points(text: &str) -> Result<Points, String> {
    text.split(',')
        .map(|item| match item.trim() {
            "x" => Ok(EvalPoint::Symbolic),
            value => parse_rational(value).map(EvalPoint::Value),
        })
        .collect::<Result<_, _>>()
        .map(Points)
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = match cli.command {
        Command::Table(args) => table(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Eval(args) => eval(args, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Run(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

enum Failure {
    Usage(UsageError),
    Run(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn table(args: TableArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let request = TableRequest {
        n_max: args.n_max,
        k: args.k,
        x: args.x,
        convention: args.convention,
        l: args.l,
        alpha: args.alpha,
    };
    let table = build_table(args.kind, &request)?;
    match args.format {
        TableFormat::Csv => table
            .write_csv(out)
            .map_err(|e| Failure::Run(e.to_string()))?,
        TableFormat::Json => table.write_json(out)?,
    }
    Ok(0)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let identity = args.identity;
    if args.k.is_some() && !identity.uses_k() {
        return Err(UsageError(format!("--k is not used by identity {}", identity.name())).into());
    }
    if args.x.is_some() && !identity.uses_x() {
        return Err(UsageError(format!("--x is not used by identity {}", identity.name())).into());
    }
    let range = RangeSpec::new(args.n_max)
        .with_ks(args.k.map(|k| k.0).unwrap_or_default())
        .with_xs(args.x.map(|x| x.0).unwrap_or_default());
    let report = verify_identity(identity, &range);
    match args.format {
        ReportFormat::Text => report::write_text(&report, out)?,
        ReportFormat::Json => report::write_json(&report, out)?,
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn eval(args: EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let parsed = expr::parse_expr(&args.expr).map_err(|e| Failure::Run(e.to_string()))?;
    let series = expr::eval_expr(&parsed, args.order).map_err(|e| Failure::Run(e.to_string()))?;
    for (n, c) in series.coeffs().iter().enumerate() {
        if args.egf {
            writeln!(out, "{n}: {}", c * factorial(n))?;
        } else {
            writeln!(out, "{n}: {c}")?;
        }
    }
    Ok(0)
}
