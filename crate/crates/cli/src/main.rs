//! `verify`: run identity suites on a model and write a report.
//!
//! Exit status is 0 when every check passes, 1 when any check fails and 2
//! on configuration, calibration or I/O errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use sasaki_core::{run_suite, ModelKind, SuiteConfig, SuiteReport};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Heisenberg,
    FlatKahler,
    Sphere,
}

impl From<Model> for ModelKind {
    fn from(m: Model) -> ModelKind {
        match m {
            Model::Heisenberg => ModelKind::Heisenberg,
            Model::FlatKahler => ModelKind::FlatKahler,
            Model::Sphere => ModelKind::Sphere,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "verify",
    version,
    about = "Check curvature and contact identities on a model"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "heisenberg")]
    model: Model,

    /// Comma-separated suite ids, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suites: Vec<String>,

    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    points: u64,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
    tol: f64,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    fn config(&self) -> SuiteConfig {
        SuiteConfig {
            suites: self.suites.iter().map(|s| s.trim().to_string()).collect(),
            points: self.points as usize,
            seed: self.seed,
            tol: self.tol,
            ..SuiteConfig::new(self.model.into(), "all")
        }
    }
}

fn render(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Text => report.to_text(),
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let report = run_suite(&cli.config()).map_err(|e| e.to_string())?;
    let body = render(&report, cli.format);
    match &cli.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            eprintln!(
                "{} checks, {} failed; report written to {}",
                report.checks.len(),
                report.failures().len(),
                path.display()
            );
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| e.to_string())?;
        }
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
