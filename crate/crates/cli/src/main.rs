use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use superhopf::dsl::convert::{built_doc, element_from_poly, tensor_from_poly};
use superhopf::dsl::run::{build_checked, effective_settings, target};
use superhopf::dsl::{parse_expression, parse_presentation, print_presentation, run_checks, DslError, Overrides, SetupError};
use superhopf::tensor::TensorSpace;

#[derive(Parser)]
#[command(name = "superhopf", version, about = "Check, normalize and build graded Hopf superalgebra presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the check suites of a .hsa file and print a JSONL report.
    Check {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the normal form of an expression.
    Nf {
        file: PathBuf,
        #[arg(long)]
        expr: String,
        /// Evaluate in this algebra instead of the default target.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Build the bicrossproduct and write it as a new .hsa file.
    Build {
        file: PathBuf,
        #[arg(long)]
        emit: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: DslError },
    #[error("--expr:{0}")]
    Expr(DslError),
    #[error("{0}")]
    Setup(#[from] SetupError),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Setup(SetupError::UnknownAlgebra(_) | SetupError::NoBicross | SetupError::Foreign { .. } | SetupError::Arity { .. }) => 2,
            CliError::Setup(_) => 1,
            _ => 2,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

fn load(path: &Path) -> Result<superhopf::dsl::PresentationDoc, CliError> {
    let text = std::fs::read_to_string(path).map_err(io_error(path))?;
    parse_presentation(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn check(file: &Path, overrides: Overrides, report_path: Option<&Path>) -> Result<(), CliError> {
    let doc = load(file)?;
    let report = run_checks(&doc, &overrides);
    let jsonl = report.to_jsonl();
    match report_path {
        Some(p) => std::fs::write(p, &jsonl).map_err(io_error(p))?,
        None => print!("{jsonl}"),
    }
    let failures = report.failures();
    for f in &failures {
        eprintln!("FAIL {}: {}", f.id, f.detail);
    }
    eprintln!("{} checks, {} failed", report.num_checks(), failures.len());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(failures.len()))
    }
}

fn normal_form(file: &Path, expr: &str, algebra: Option<&str>) -> Result<(), CliError> {
    let doc = load(file)?;
    let t = target(&doc, algebra)?;
    let p = t.algebra();
    let (arity, poly) = parse_expression(expr, &|n| p.id(n).is_some()).map_err(CliError::Expr)?;
    if arity == 1 {
        let e = element_from_poly(p, &poly)?;
        println!("{}", p.render(&p.normal_form(&e)));
    } else {
        println!("{}", tensor_from_poly(&TensorSpace::power(p, arity), &poly)?);
    }
    Ok(())
}

fn build(file: &Path, emit: &Path) -> Result<(), CliError> {
    let doc = load(file)?;
    let (spec, _) = effective_settings(&doc, &Overrides::default());
    let built = build_checked(&doc, &spec)?;
    std::fs::write(emit, print_presentation(&built_doc(&built, &doc))).map_err(io_error(emit))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file, max_degree, samples, seed, report } => {
            let overrides = Overrides { max_degree: *max_degree, samples: *samples, seed: *seed };
            check(file, overrides, report.as_deref())
        }
        Command::Nf { file, expr, algebra } => normal_form(file, expr, algebra.as_deref()),
        Command::Build { file, emit } => build(file, emit),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::ChecksFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
