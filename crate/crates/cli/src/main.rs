//! `quiverdim`: homological invariants of bound quiver algebras from `.bqa` files.
//!
//! Exit codes: 0 success, 1 a comparison found a disagreement, 2 unreadable or malformed
//! input, 3 the input parsed but could not be built or computed.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverdim::Field;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(
    name = "quiverdim",
    version,
    about = "Homological invariants of bound quiver algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Config,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Resolution length standing in for infinity.
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Ground field override: `Q` or `F<p>` such as `F7`.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output path: the report, or the generated `.bqa` for `uniformize` and `family`.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Loewy profile, injective dimensions, quasi-uniformity and the finitistic bounds.
    Analyze { file: PathBuf },
    /// Minimal projective resolution of a simple module.
    Resolve {
        file: PathBuf,
        /// Vertex of a simple left module.
        #[arg(
            long,
            conflicts_with = "op_simple",
            required_unless_present = "op_simple"
        )]
        simple: Option<String>,
        /// Vertex of a simple right module, resolved over the opposite algebra.
        #[arg(long)]
        op_simple: Option<String>,
    },
    /// Adds loops at the non-maximal vertices and writes the algebra with both maps.
    Uniformize { file: PathBuf },
    /// Writes the family member with parameters `n` and `m`.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Analyzes a `.bqhom` homomorphism.
    CheckHom {
        file: PathBuf,
        /// Source algebra, instead of searching the directory of the hom file.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Target algebra, instead of searching the directory of the hom file.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Compares the engine with the brute-force oracle.
    OracleCompare { file: PathBuf },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse()
        .map_err(|e: quiverdim::scalar::FieldError| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Build(String),
    #[error("{0}")]
    Disagreement(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Disagreement(_) => 1,
            CliError::Input(_) => 2,
            CliError::Build(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config;
    let result = match cli.command {
        Command::Analyze { file } => commands::analyze(&cfg, &file),
        Command::Resolve {
            file,
            simple,
            op_simple,
        } => match (simple, op_simple) {
            (Some(v), _) => commands::resolve(&cfg, &file, &v, false),
            (None, Some(v)) => commands::resolve(&cfg, &file, &v, true),
            (None, None) => unreachable!("clap requires one of the two"),
        },
        Command::Uniformize { file } => commands::uniformize(&cfg, &file),
        Command::Family { n, m } => commands::family(&cfg, n, m),
        Command::CheckHom {
            file,
            source,
            target,
        } => commands::check_hom(&cfg, &file, source.as_deref(), target.as_deref()),
        Command::OracleCompare { file } => commands::oracle_compare(&cfg, &file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
