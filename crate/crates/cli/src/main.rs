mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use squeezelab::error::Error;

#[derive(Parser, Debug)]
#[command(name = "squeezelab", version, about = "Scaling sequences, limit models and squeezing estimates for model domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plurisubharmonicity of the z-part of the defining function on a polar grid.
    CheckPsh(Common),
    /// Strong h-extendibility margin of a rigid model.
    CheckHext(Common),
    /// Approach-mode classification of a sequence.
    Classify(Common),
    /// Limit model of the rescaled defining functions.
    Scale(Common),
    /// Sup-deviation of the rescaled functions from their limit.
    Converge(Common),
    /// Squeezing lower bounds along the sequence.
    Squeeze(Common),
    /// Reproduce a worked example and compare against expected constants.
    Reproduce(Reproduce),
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Catalog domain id or path to a domain file; defaults to the sequence's domain.
    #[arg(long)]
    domain: Option<String>,
    /// Catalog sequence id or path to a sequence file.
    #[arg(long)]
    seq: Option<String>,
    /// j values, as `a:b:geom`, `a:b:lin` or a comma list.
    #[arg(long)]
    js: Option<String>,
    /// Scaling pipeline; defaults to the one matching the sequence.
    #[arg(long)]
    pipeline: Option<String>,
    /// Grid resolution: nodes per axis for `converge`, radial and angular nodes for psh checks.
    #[arg(long)]
    grid_n: Option<usize>,
    /// Ray directions for the inner radius.
    #[arg(long, default_value_t = squeezelab::analysis::DEFAULT_DIRECTIONS)]
    directions: usize,
    /// Boundary samples for the outer radius; defaults to four per direction.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Record wall time per j (makes reports non-reproducible byte for byte).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Reproduce {
    /// ex-4-1, ex-4-2-prop-4-1, ex-5-1, ex-5-2, ex-5-3 or all.
    target: String,
    /// Skip the squeezing traces.
    #[arg(long)]
    no_squeeze: bool,
    #[arg(long, default_value_t = squeezelab::analysis::DEFAULT_DIRECTIONS)]
    directions: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
enum Failure {
    Input(Error),
    Verdict(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verdict(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPsh { .. } | Error::NotStronglyPseudoconvex { .. } | Error::PipelineMismatch(_) | Error::ReproMismatch { .. } => {
                Failure::Verdict(e.to_string())
            }
            Error::NotConverged { .. }
            | Error::NoConvergence { .. }
            | Error::NoBoundaryHit
            | Error::PoleHit
            | Error::ChartViolation(_)
            | Error::CenterNotMapped { .. }
            | Error::NonPositiveValue { .. } => Failure::Numeric(e),
            other => Failure::Input(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "input error: {e}"),
            Failure::Verdict(s) => write!(f, "verdict failure: {s}"),
            Failure::Numeric(e) => write!(f, "numeric failure: {e}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

const USAGE_EXIT: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", serde_json::json!({ "error": f.to_string(), "exit_code": f.code() }));
            ExitCode::from(f.code())
        }
    }
}
