//! Command-line front end for the fiberings library.
//!
//! Exit codes: 0 success, 2 domain violation, 3 parse or read error,
//! 4 internal invariant failure.

use clap::{Parser, Subcommand};
use fiberings_cli::file_format::{self, ConstructionFile};
use fiberings_cli::{report, CliError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fiberings",
    about = "Surface-bundle 4-manifold constructions: validate them, enumerate their fiberings with certificates and monodromy, and evaluate fibering-count bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a construction file; diagnostics go to standard error.
    Validate {
        /// Construction file (TOML).
        path: PathBuf,
    },
    /// Enumerate the fiberings of a construction.
    Fiberings {
        /// Construction file (TOML).
        path: PathBuf,
        /// Emit a distinctness certificate for every unordered pair.
        #[arg(long)]
        certify: bool,
        /// Emit per-generator homology matrices and predicate results.
        #[arg(long)]
        monodromy: bool,
        /// Machine-readable JSON instead of tables.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the bounds on the fibering-count function N(d).
    Bounds {
        /// Euler characteristic parameter: bounds apply to chi(E) <= 4d.
        d: u64,
        /// Tabulate every value from 1 through this instead of a single d.
        #[arg(long)]
        sweep: Option<u64>,
        /// Use the sharper divisor-times-d^(2d+6) upper bound.
        #[arg(long)]
        sharper: bool,
        /// Machine-readable JSON instead of tables.
        #[arg(long)]
        json: bool,
    },
    /// Write a construction file for a named family.
    Family {
        /// One of: basic, line, tower.
        kind: String,
        /// Genus for basic; vertex count for line and tower.
        n: usize,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Guard for pairwise certification: the pair count is quadratic in the
/// fibering count.
const MAX_CERTIFY_VERTICES: usize = 10;

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { path } => {
            let file = read_construction(&path)?;
            file.build()?;
            eprintln!("{}: ok", path.display());
            Ok(())
        }
        Command::Fiberings {
            path,
            certify,
            monodromy,
            json,
        } => {
            let file = read_construction(&path)?;
            let construction = file.build()?;
            if certify {
                if let fiberings_core::fibering::Construction::SectionSum(b) = &construction {
                    if b.c() > MAX_CERTIFY_VERTICES {
                        return Err(CliError::Domain(fiberings_core::Error::TooManyVertices {
                            vertices: b.c(),
                            limit: MAX_CERTIFY_VERTICES,
                        }));
                    }
                }
            }
            let report = report::fiberings_report(&construction, certify, monodromy)?;
            print!(
                "{}",
                if json {
                    report.to_json()
                } else {
                    report.to_string()
                }
            );
            Ok(())
        }
        Command::Bounds {
            d,
            sweep,
            sharper,
            json,
        } => {
            if d < 1 {
                return Err(CliError::Parse("d must be at least 1".into()));
            }
            let (from, to) = match sweep {
                Some(max) => (1, max.max(1)),
                None => (d, d),
            };
            let report = report::bounds_report_rows(from, to, sharper);
            print!(
                "{}",
                if json {
                    report.to_json()
                } else {
                    report.to_string()
                }
            );
            Ok(())
        }
        Command::Family { kind, n, output } => {
            if !(1..=16).contains(&n) {
                return Err(CliError::Domain(fiberings_core::Error::TooManyVertices {
                    vertices: n,
                    limit: 16,
                }));
            }
            let file = match kind.as_str() {
                "basic" => file_format::basic_family_file(n)?,
                "line" => file_format::line_family_file(n)?,
                "tower" => file_format::tower_family_file(n)?,
                other => {
                    return Err(CliError::Parse(format!(
                        "unknown family {other:?}; use basic, line, or tower"
                    )))
                }
            };
            let text = file.emit();
            match output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| CliError::Io(path, e.to_string()))?
                }
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

fn read_construction(path: &PathBuf) -> Result<ConstructionFile, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e.to_string()))?;
    ConstructionFile::parse(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
