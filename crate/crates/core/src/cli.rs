//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or parse error, 2 nilpotent quotient did not
//! stabilize, 3 unsupported algebra class, 4 internal consistency failure
//! (including disagreeing H2 computations and failed checks).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog;
use crate::chi_construct::{compute_chi_auto, default_max_class};
use crate::error::{Error, Result};
use crate::free_lie::DEFAULT_BUDGET;
use crate::homology::HomologyReport;
use crate::lie_core::LieAlgebra;
use crate::verify::run_checks;

pub const BUDGET_ENV: &str = "CHI_LIE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "chi-lie",
    version,
    about = "Weak commutativity algebras and H2 of Lie algebras over Q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog names and the standard instances with known dimensions.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute chi(g) with the maps alpha, beta, rho and the ideals L, D, W, R.
    Chi(RunArgs),
    /// Compute H1 and H2 three ways.
    Homology(RunArgs),
    /// Compute chi(g) and run the structural checks C1-C12.
    Verify(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Lie algebra JSON file.
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    pub input: Option<PathBuf>,
    /// Catalog name followed by its integer parameters.
    #[arg(long, num_args = 1.., value_name = "NAME [PARAMS]...")]
    pub catalog: Option<Vec<String>>,
    #[arg(long)]
    pub max_class: Option<usize>,
    /// Write the JSON result here.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Maps an error to the documented exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Json(_)
        | Error::Parse(_)
        | Error::UnknownName(_)
        | Error::BadParams { .. }
        | Error::InvalidAlgebra(_)
        | Error::DimensionMismatch { .. }
        | Error::IndexOutOfRange { .. } => 1,
        Error::NotStabilized { .. } => 2,
        Error::Unsupported(_)
        | Error::NotNilpotent(_)
        | Error::NotPerfect(_)
        | Error::NonvanishingH2 { .. }
        | Error::BudgetExceeded { .. } => 3,
        _ => 4,
    }
}

fn budget() -> Result<usize> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "{BUDGET_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn load(args: &RunArgs, validate: bool) -> Result<LieAlgebra> {
    if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)?;
        return if validate {
            LieAlgebra::from_json(&text)
        } else {
            LieAlgebra::from_json_unvalidated(&text)
        };
    }
    let named = args
        .catalog
        .as_ref()
        .ok_or_else(|| Error::Parse("no input given".into()))?;
    let params: Vec<usize> = named[1..]
        .iter()
        .map(|p| {
            p.parse()
                .map_err(|_| Error::Parse(format!("catalog parameter {p:?} is not a count")))
        })
        .collect::<Result<_>>()?;
    catalog::build(&named[0], &params)
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes the JSON document to `--output`, or to stdout in JSON format; the
/// text summary goes to stdout in text format.
fn emit(doc: &Value, summary: &str, output: Option<&PathBuf>, format: Format) -> Result<()> {
    if let Some(path) = output {
        std::fs::write(path, render(doc))?;
    }
    match format {
        Format::Json if output.is_none() => print!("{}", render(doc)),
        Format::Json => {}
        Format::Text => println!("{summary}"),
    }
    Ok(())
}

fn cmd_catalog(format: Format, output: Option<&PathBuf>) -> Result<i32> {
    let doc = catalog::listing();
    let summary = catalog::NAMES
        .iter()
        .map(|(n, a)| format!("{n} ({a} parameter{})", if *a == 1 { "" } else { "s" }))
        .collect::<Vec<_>>()
        .join("\n");
    emit(&doc, &summary, output, format)?;
    Ok(0)
}

fn cmd_chi(args: &RunArgs) -> Result<i32> {
    let g = load(args, true)?;
    let c = compute_chi_auto(&g, args.max_class, budget()?)?;
    let mut summary = c.summary();
    if let Some(m) = c.max_class {
        summary.push_str(&format!(
            "\nmax class {m}, class used {}",
            c.class_used.unwrap_or(0)
        ));
    }
    emit(&c.to_json(), &summary, args.output.as_ref(), args.format)?;
    Ok(0)
}

fn cmd_homology(args: &RunArgs) -> Result<i32> {
    let g = load(args, false)?;
    let jacobi = g.validate();
    let report = HomologyReport::compute_with_budget(&g, budget()?)?;
    let fmt = |o: Option<usize>| o.map_or("skipped".to_string(), |d| d.to_string());
    let summary = format!(
        "h1 {} / h2 ce {} / h2 hopf {} / h2 exterior {} / agree {}",
        report.h1,
        report.h2_ce,
        fmt(report.h2_hopf),
        fmt(report.h2_exterior),
        report.agree
    );
    emit(
        &serde_json::to_value(&report)?,
        &summary,
        args.output.as_ref(),
        args.format,
    )?;
    if let Err(v) = jacobi {
        eprintln!(
            "error: input violates the Jacobi identity on basis triple {:?}",
            v.triple
        );
        return Ok(4);
    }
    Ok(if report.agree { 0 } else { 4 })
}

fn cmd_verify(args: &RunArgs) -> Result<i32> {
    let g = load(args, true)?;
    let budget = budget()?;
    let c = compute_chi_auto(&g, args.max_class, budget)?;
    let h = HomologyReport::compute_with_budget(&g, budget)?;
    let report = run_checks(&c, &h)?;
    let mut doc = serde_json::to_value(&report)?;
    doc["max_class"] = json!(c
        .max_class
        .or_else(|| args.max_class.or(default_max_class(&g))));
    let mut lines: Vec<String> = report
        .checks
        .iter()
        .map(|ch| format!("{} {}: {}", ch.id, ch.status.as_str(), ch.desc))
        .collect();
    lines.push(format!("all passed: {}", report.all_passed));
    emit(&doc, &lines.join("\n"), args.output.as_ref(), args.format)?;
    Ok(if report.all_passed { 0 } else { 4 })
}

fn dispatch(cli: Cli) -> Result<i32> {
    match &cli.command {
        Command::Catalog { format, output } => cmd_catalog(*format, output.as_ref()),
        Command::Chi(a) => cmd_chi(a),
        Command::Homology(a) => cmd_homology(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
