//! File formats, instance generators and the command-line front end for
//! `chaincert-core`.

pub mod certificate;
pub mod commands;
pub mod format;
pub mod generate;

use std::io::IsTerminal;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

pub use commands::{solve, verify_certificate, Kind, Options, Outcome, EXIT_ERROR, EXIT_FALSE, EXIT_OK};
pub use format::{Problem, ProblemFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error(transparent)]
    Core(#[from] chaincert_core::Error),
}

#[derive(Debug, Parser)]
#[command(name = "chaincert", version, about = "Certified chain-level constructions on finite simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Problem file (JSON).
    pub input: PathBuf,
    /// Coefficient ring: Z, Q or Zmod:<m>. Overrides the file.
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Companions must use exactly the vertices of the cycle.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub strict_vertices: bool,
    /// Where to write the certificate on success.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Prefix the report with the current time.
    #[arg(long)]
    pub timestamps: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Realization problems over acyclic-fiber surjections.
    Realization,
    /// Maps and towers that may or may not be UV^n.
    Uvn,
    /// Lifting through the projection of a prism onto its base.
    Prism,
    /// Realization problems over a sphere, which must fail to fill.
    Obstruction,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Homology(ProblemArgs),
    CheckUvn(ProblemArgs),
    CheckLcn(ProblemArgs),
    CheckAlcn(ProblemArgs),
    ExtendRealization(ProblemArgs),
    Lift(ProblemArgs),
    BuildHomotopy(ProblemArgs),
    DugundjiExtend(ProblemArgs),
    NerveFactorize(ProblemArgs),
    VerifyCertificate {
        certificate: PathBuf,
        #[arg(long)]
        timestamps: bool,
    },
    GenInstance {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn stamp(report: String, on: bool) -> String {
    if !on {
        return report;
    }
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("timestamp: {secs}\n{report}")
}

/// Run a parsed command line: returns the exit code and what to print.
pub fn run(cli: &Cli) -> (i32, String) {
    let (kind, args) = match &cli.command {
        Command::Homology(a) => (Kind::Homology, a),
        Command::CheckUvn(a) => (Kind::CheckUvn, a),
        Command::CheckLcn(a) => (Kind::CheckLcn, a),
        Command::CheckAlcn(a) => (Kind::CheckAlcn, a),
        Command::ExtendRealization(a) => (Kind::ExtendRealization, a),
        Command::Lift(a) => (Kind::Lift, a),
        Command::BuildHomotopy(a) => (Kind::BuildHomotopy, a),
        Command::DugundjiExtend(a) => (Kind::DugundjiExtend, a),
        Command::NerveFactorize(a) => (Kind::NerveFactorize, a),
        Command::VerifyCertificate { certificate, timestamps } => {
            return match read(certificate) {
                Ok(text) => {
                    let o = verify_certificate(&text);
                    (o.code, stamp(o.report, *timestamps))
                }
                Err(e) => (EXIT_ERROR, format!("error: {e}\n")),
            };
        }
        Command::GenInstance { family, seed, out } => {
            let text = format::to_pretty(&generate::instance(*family, *seed));
            return match out {
                Some(path) => match write(path, &text) {
                    Ok(()) => (EXIT_OK, String::new()),
                    Err(e) => (EXIT_ERROR, format!("error: {e}\n")),
                },
                None => (EXIT_OK, text),
            };
        }
    };
    let text = match read(&args.input) {
        Ok(t) => t,
        Err(e) => return (EXIT_ERROR, format!("error: {e}\n")),
    };
    let opts = Options { ring: args.ring.clone(), n: args.n, dim: args.dim, strict_vertices: args.strict_vertices };
    let o = solve(kind, &text, &opts);
    let mut report = o.report;
    if let (Some(path), Some(cert)) = (&args.certificate, &o.certificate) {
        if let Err(e) = write(path, cert) {
            return (EXIT_ERROR, format!("{report}error: {e}\n"));
        }
        let at = report.trim_end_matches('\n').rfind('\n').map_or(0, |i| i + 1);
        report.insert_str(at, &format!("certificate: {}\n", path.display()));
    }
    (o.code, stamp(report, args.timestamps))
}

/// Whether to color verdict lines: off when `CHAINCERT_COLOR=0` or when
/// standard output is not a terminal.
pub fn color_enabled() -> bool {
    std::env::var("CHAINCERT_COLOR").map_or(true, |v| v != "0") && std::io::stdout().is_terminal()
}

/// Color `verdict:` lines green or red.
pub fn colorize(report: &str) -> String {
    report
        .lines()
        .map(|l| match l {
            "verdict: PASS" => "\x1b[32mverdict: PASS\x1b[0m".to_string(),
            "verdict: FAIL" | "verdict: ERROR" => format!("\x1b[31m{l}\x1b[0m"),
            _ => l.to_string(),
        })
        .map(|l| l + "\n")
        .collect()
}
