mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "walker", version, about = "Geometry and Ricci solitons of 3D Lorentzian Walker metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Christoffel symbols, curvature, Ricci tensor and scalar curvature of g_f
    Geometry(GeometryArgs),
    /// Verify whether (g_f, X, lambda) is a Ricci soliton
    Check(CheckArgs),
    /// Soliton conditions for a generic field on a metric family
    Conditions(ConditionsArgs),
    /// Build a family's vector field and check it
    Construct(ConstructArgs),
    /// Finite-difference crosscheck of the symbolic results
    Crosscheck(CrosscheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// Declare a symbol: `name:(deps)` or `name:param`; repeatable
    #[arg(long = "declare", value_name = "DECL")]
    declare: Vec<String>,
    /// Sign of g_xx: 1, -1 or sym
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    eps: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GeometryArgs {
    /// Defining function f
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long = "A", default_value = "0", allow_hyphen_values = true)]
    a: String,
    #[arg(long = "B", default_value = "0", allow_hyphen_values = true)]
    b: String,
    #[arg(long = "C", default_value = "0", allow_hyphen_values = true)]
    c: String,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    #[command(flatten)]
    field: FieldArgs,
    /// Rational soliton constant, or `sym`
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    lambda: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ConditionsArgs {
    /// general, quadratic-y, flat or strict
    #[arg(long)]
    family: String,
    /// Shape of f; defaults to the family's shape
    #[arg(long = "f", allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    lambda: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// theorem1, quadratic-y, flat, flat-proof or strict
    #[arg(long)]
    family: String,
    #[arg(long = "H", default_value = "0", allow_hyphen_values = true)]
    h: String,
    #[arg(long = "K", default_value = "0", allow_hyphen_values = true)]
    k: String,
    #[arg(long = "N", allow_hyphen_values = true, conflicts_with = "big_f")]
    n: Option<String>,
    #[arg(long = "F", id = "big_f", allow_hyphen_values = true)]
    big_f: Option<String>,
    #[arg(long = "a", default_value = "0", allow_hyphen_values = true)]
    coeff_a: String,
    #[arg(long = "b", default_value = "0", allow_hyphen_values = true)]
    coeff_b: String,
    #[arg(long = "d", default_value = "0", allow_hyphen_values = true)]
    coeff_d: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    delta: String,
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    lambda: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long = "C", allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, default_value_t = walker::numeric::DEFAULT_STEP)]
    step: f64,
    #[arg(long, default_value_t = walker::numeric::DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluate sample points on one thread
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    common: Common,
}

fn emit(report: &Report, common: &Common) -> Result<(), String> {
    let body = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &common.output {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (outcome, common) = match &cli.command {
        Command::Geometry(a) => (commands::geometry(a, argv), &a.common),
        Command::Check(a) => (commands::check(a, argv), &a.common),
        Command::Conditions(a) => (commands::conditions(a, argv), &a.common),
        Command::Construct(a) => (commands::construct(a, argv), &a.common),
        Command::Crosscheck(a) => (commands::crosscheck(a, argv), &a.common),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&report, common) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit as u8)
}
