//! Command-line front end: `validate`, `decide`, `verify` and `explain`.
//!
//! The first line of standard output is always machine-parsable (`AFFINE`,
//! `NOT_AFFINE`, `VALID`/`INVALID …`, `PASS`/`FAIL …`). Exit codes: 0 when a
//! question was answered, 1 when validation or verification failed, 2 when
//! the input could not be used.

pub mod instance;
pub mod render;

use std::io::Write;
use std::path::{Path, PathBuf};

use affinity_certify::{verify, Certificate};
use affinity_engine::{check_input, decide, Verdict};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use instance::{Document, InstanceError, ProblemInstance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "affinity", version, about = "Decide whether G/H is affine for a one-dimensional unipotent H")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check problem files: parsing, Jacobi identity, Levi data, element.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Print the verdict, optionally with the trace and a certificate file.
    Decide {
        path: PathBuf,
        /// Follow the verdict with the per-level trace.
        #[arg(long)]
        trace: bool,
        /// Write the certificate to this file.
        #[arg(long, value_name = "PATH")]
        cert: Option<PathBuf>,
    },
    /// Check a certificate (or a trace document carrying one) against a problem.
    Verify { problem: PathBuf, cert: PathBuf },
    /// Per-level narrative of the decision.
    Explain { path: PathBuf },
}

/// Trace document written by `decide --trace --format json` and `explain --format json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub instance: String,
    pub basis: Vec<String>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Validate { paths } => cmd_validate(paths, cli.format, out),
        Command::Decide { path, trace, cert } => {
            cmd_decide(path, *trace, cert.as_deref(), cli.format, out)
        }
        Command::Verify { problem, cert } => cmd_verify(problem, cert, out),
        Command::Explain { path } => cmd_decide(path, true, None, cli.format, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INVALID, e.to_string())
}

/// Parses and validates a problem file; the error is the first failure.
pub fn load_valid(path: &Path) -> Result<ProblemInstance, String> {
    let inst = ProblemInstance::load(path).map_err(|e| e.to_string())?;
    check_input(&inst.algebra, &inst.levi_data, &inst.element).map_err(|e| e.to_string())?;
    Ok(inst)
}

fn cmd_validate(paths: &[PathBuf], format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut code = EXIT_OK;
    let mut reports = Vec::new();
    for path in paths {
        let name = path.display().to_string();
        let result = load_valid(path);
        if result.is_err() {
            code = EXIT_FAILED;
        }
        match format {
            Format::Text => match &result {
                Ok(_) => writeln!(out, "VALID {name}")?,
                Err(e) => writeln!(out, "INVALID {name}: {e}")?,
            },
            Format::Json => reports.push(serde_json::json!({
                "path": name,
                "valid": result.is_ok(),
                "error": result.err(),
            })),
        }
    }
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports).map_err(invalid)?)?;
    }
    Ok(code)
}

fn cmd_decide(
    path: &Path,
    trace: bool,
    cert: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let inst = load_valid(path).map_err(invalid)?;
    let verdict = decide(&inst.algebra, &inst.levi_data, &inst.element).map_err(invalid)?;
    if let Some(cert_path) = cert {
        let text = serde_json::to_string_pretty(&verdict.certificate).map_err(invalid)?;
        std::fs::write(cert_path, text + "\n")
            .map_err(|e| invalid(format!("cannot write {}: {e}", cert_path.display())))?;
    }
    writeln!(out, "{}", verdict.kind)?;
    if trace {
        match format {
            Format::Text => write!(out, "{}", render::narrative(&inst, &verdict))?,
            Format::Json => {
                let doc = TraceDocument {
                    instance: inst.name.clone(),
                    basis: inst.algebra.basis_names().to_vec(),
                    verdict,
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(invalid)?)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Reads a certificate document, or the certificate inside a trace document.
pub fn parse_certificate(text: &str) -> Result<Certificate, serde_json::Error> {
    let mut value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(inner) = value.get_mut("certificate") {
        value = inner.take();
    }
    serde_json::from_value(value)
}

fn cmd_verify(problem: &Path, cert_path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_valid(problem).map_err(invalid)?;
    let text = std::fs::read_to_string(cert_path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", cert_path.display())))?;
    let cert = parse_certificate(&text)
        .map_err(|e| invalid(format!("certificate parse error: {e}")))?;
    match verify(&inst.algebra, &inst.levi_data, &inst.element, &cert) {
        Ok(()) => {
            writeln!(out, "PASS {}", cert.kind())?;
            Ok(EXIT_OK)
        }
        Err(rejection) => {
            writeln!(out, "FAIL {rejection}")?;
            Ok(EXIT_FAILED)
        }
    }
}
