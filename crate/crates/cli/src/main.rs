use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Exact Conway polynomial, reduced series and finite type checks for
/// link diagrams in PD notation.
#[derive(Debug, Parser)]
#[command(name = "conway", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Read the diagram from a file of PD text.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Diagram given inline, e.g. "X+(1,3,2,4) X+(3,1,4,2)".
    #[arg(long, global = true, value_name = "PD")]
    pub pd: Option<String>,
    /// Named corpus diagram, e.g. `hopf:+`, `whitehead:2`, `ctype2:1,2,-3,0`.
    #[arg(long, global = true, value_name = "NAME[:PARAMS]")]
    pub corpus: Option<String>,
    /// Truncation order of the reduced series.
    #[arg(long, global = true, default_value_t = conway_core::reduced::DEFAULT_TRUNCATION)]
    pub truncation: usize,
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a diagram.
    Validate,
    /// Conway polynomial, linking matrix, reduced series and its coefficients.
    Invariants,
    #[command(subcommand)]
    Corpus(CorpusCommand),
    #[command(subcommand)]
    Probe(ProbeCommand),
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// Print a corpus entry (or all default entries) with its PD string.
    Emit,
}

#[derive(Debug, Subcommand)]
pub enum ProbeCommand {
    /// Look for singular diagrams with n+1 self double points on which the
    /// extension of an invariant is nonzero.
    ColoredType(ProbeArgs),
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Invariant name: lk, lkIJ, cN, alphaK or zK.
    #[arg(long)]
    pub invariant: String,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = Family::Random)]
    pub family: Family,
    /// Parameters of a single family member, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Components of random samples.
    #[arg(long, default_value_t = 2)]
    pub components: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Random,
    Ctype2,
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Crossing-change laws for α_1 (two components) and γ (three).
    Jumps,
    /// Skein identity at every crossing.
    Skein,
    /// Product rule for extensions of two invariants.
    Leibniz(LeibnizArgs),
}

#[derive(Debug, Args)]
pub struct LeibnizArgs {
    #[arg(long, default_value = "lk")]
    pub u: String,
    #[arg(long, default_value = "c1")]
    pub v: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.config.format;
    match commands::run(&cli) {
        Ok((report, code)) => {
            emit(&output::render(&report, format));
            ExitCode::from(code)
        }
        Err(e) => {
            if let Some(report) = e.report {
                emit(&output::render(&report, format));
            }
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

/// Print to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}
