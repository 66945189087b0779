//! `nbk`: scans, K-theory and verification reports for twisted Bieberbach quotients.

mod commands;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nbk_core::actions::Family;
use nbk_core::scalar::{parse_rational, Rational};

use crate::suites::Suite;

#[derive(Parser, Debug)]
#[command(name = "nbk", version, about = "Noncommutative Bieberbach manifolds: cocycles, crossed products, K-theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Treat anomalies as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 2)]
    pub degree: i64,
    /// Fix θ to a rational value and work with folded phases.
    #[arg(long, global = true, value_parser = theta_arg)]
    pub theta: Option<Rational>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Admissible θ patterns for a family's action.
    Scan {
        #[arg(long, value_parser = family_arg)]
        family: Option<Family>,
        #[arg(long, default_value_t = 6)]
        denominator: u32,
    },
    /// K-groups from the Pimsner–Voiculescu sequence.
    Ktheory {
        #[arg(value_parser = family_arg, required_unless_present = "family")]
        name: Option<Family>,
        #[arg(long = "family", value_parser = family_arg, conflicts_with = "name")]
        family: Option<Family>,
        #[arg(long, allow_hyphen_values = true, value_parser = epsilon_arg)]
        epsilon: Option<i64>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_parser = family_arg)]
        family: Option<Family>,
        #[arg(long, allow_hyphen_values = true, value_parser = epsilon_arg)]
        epsilon: Option<i64>,
    },
    /// First homology of the Bieberbach groups against K_0.
    Homology {
        #[arg(long, value_parser = family_arg)]
        family: Option<Family>,
    },
}

fn family_arg(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn epsilon_arg(s: &str) -> Result<i64, String> {
    match s.trim() {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(format!("epsilon must be +1 or -1, got `{other}`")),
    }
}

fn theta_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let common = cli.common.clone();
    let result = match cli.command {
        Command::Scan { family, denominator } => commands::scan(&common, family, denominator),
        Command::Ktheory { name, family, epsilon } => {
            commands::ktheory(&common, name.or(family).expect("clap requires a family"), epsilon)
        }
        Command::Verify { suite, family, epsilon } => commands::verify(&common, suite, family, epsilon),
        Command::Homology { family } => commands::homology(&common, family),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("nbk: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("nbk: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.failed(common.strict) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
