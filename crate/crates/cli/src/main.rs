use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand};

use abcover::exactmath::eliminators;
use abcover::report::{self, Inputs, ReportOptions};

/// Exact invariants of abelian covers of the plane branched along line arrangements.
///
/// Without input files the built-in nine-line configuration is used.
#[derive(Parser, Debug)]
#[command(name = "abcover", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Include the bound tables in the full report.
    #[arg(long, global = true)]
    tables: bool,

    /// Use the N-th valid line at infinity (0-based).
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    chart_seed: usize,

    /// Arrangement JSON file; requires --character.
    #[arg(long, global = true, value_name = "FILE", requires = "character")]
    arrangement: Option<PathBuf>,

    /// Character JSON file; requires --arrangement.
    #[arg(long, global = true, value_name = "FILE", requires = "arrangement")]
    character: Option<PathBuf>,

    /// Multiple of K for the branch-curve numerology.
    #[arg(long, global = true, default_value_t = 5)]
    m: i64,

    /// Use this K^2 in the numerology instead of the computed one.
    #[arg(long, global = true)]
    k2: Option<i64>,

    /// n for the deformation-class and homeotopy counts.
    #[arg(long, global = true, default_value_t = 2)]
    dim: i64,

    /// Print the basis of every eigenspace of 2-forms.
    #[arg(long, global = true)]
    forms: bool,

    /// Rank/kernel backend.
    #[arg(long, global = true, value_name = "NAME", default_value = "fraction-free")]
    eliminator: String,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Every section (default).
    Full,
    /// Arrangement summary, K^2, e and intersection numbers.
    Invariants,
    /// Geometric genus and irregularity.
    Pg,
    /// Klein symmetries respecting the covering.
    Rigidity,
    /// Branch-curve and deformation-class formulas.
    Numerology,
    /// Degree, divisibility and point-order bound tables.
    Tables,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Full => "full",
            Command::Invariants => "invariants",
            Command::Pg => "pg",
            Command::Rigidity => "rigidity",
            Command::Numerology => "numerology",
            Command::Tables => "tables",
        }
    }
}

fn load_inputs(cli: &Cli) -> Result<Inputs> {
    match (&cli.arrangement, &cli.character) {
        (Some(a), Some(c)) => {
            let a_text = fs::read_to_string(a).with_context(|| format!("reading {}", a.display()))?;
            let c_text = fs::read_to_string(c).with_context(|| format!("reading {}", c.display()))?;
            Ok(Inputs::from_json(&a_text, &c_text)?)
        }
        _ => Ok(Inputs::ceva()),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if !eliminators().iter().any(|e| e.name() == cli.eliminator) {
        let known: Vec<&str> = eliminators().iter().map(|e| e.name()).collect();
        anyhow::bail!("unknown eliminator {:?}; available: {}", cli.eliminator, known.join(", "));
    }
    let options = ReportOptions {
        chart_seed: cli.chart_seed,
        eliminator: cli.eliminator.clone(),
        m: cli.m,
        k_squared: cli.k2,
        dim: cli.dim,
        forms: cli.forms,
        tables: cli.tables,
    };
    let inputs = load_inputs(cli)?;
    let command = cli.command.unwrap_or(Command::Full);
    let report = report::run(command.name(), &inputs, &options)?;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    for f in report.failures() {
        eprintln!("check failed: {}: {}", f.name, f.detail);
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
