mod error;
mod random;
mod render;
mod run;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use fedosov_core::{Approx, Exact};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::run::{Context, Outcome};
use crate::scenario::{Command, ScalarChoice};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Run one scenario file through the Fedosov engine.
#[derive(Parser, Debug)]
#[command(name = "fedosov", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    #[arg(long)]
    scenario: PathBuf,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Overrides the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the truncation degree `D`.
    #[arg(long)]
    order: Option<u32>,
}

#[derive(Serialize)]
struct Report {
    command: Command,
    scalar: ScalarChoice,
    #[serde(rename = "D")]
    trunc: Option<u32>,
    seed: u64,
    status: &'static str,
    findings: Vec<String>,
    result: serde_json::Value,
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let path = cli.scenario.display().to_string();
    let text = std::fs::read_to_string(&cli.scenario).map_err(|source| CliError::Io { path, source })?;
    let mut sc = scenario::parse(&text)?;
    if cli.order.is_some() {
        sc.trunc = cli.order;
    }
    sc.validate(cli.command)?;
    let seed = cli.seed.or(sc.seed).unwrap_or(0);
    let mut ctx = Context { scenario: &sc, command: cli.command, trunc: sc.trunc, rng: ChaCha8Rng::seed_from_u64(seed) };
    let Outcome { result, findings } = match sc.scalar {
        ScalarChoice::Exact => run::run::<Exact>(&mut ctx)?,
        ScalarChoice::Approx => run::run::<Approx>(&mut ctx)?,
    };
    Ok(Report {
        command: cli.command,
        scalar: sc.scalar,
        trunc: sc.trunc,
        seed,
        status: if findings.is_empty() { "ok" } else { "findings" },
        findings,
        result,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let value = serde_json::to_value(&report).expect("reports serialize");
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("reports serialize") + "\n",
        Format::Text => render::text(&value),
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &body).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            print!("{body}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.findings.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
