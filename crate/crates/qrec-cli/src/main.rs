//! qrec: exact computations with quiver representations over a prime field.
//!
//! Subcommands: `indec` lists the indecomposables of a quiver file,
//! `subcats` enumerates subcategories of a chosen kind, `transfer` moves a
//! subcategory through a vertex split along a named direction, `verify`
//! runs the verification suites, and `reproduce` regenerates the worked
//! example tables.
//!
//! Exit codes: 0 success, 1 a check failed (output still emitted), 2 parse
//! or usage error, 3 a bound or cap was exceeded, 4 a computation was
//! inconclusive within its budget, 5 a transfer hypothesis failed (the
//! witness is printed).

mod commands;
mod files;
mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use render::Format;

/// An error carrying its process exit code.
#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    pub fn parse(message: impl Into<String>) -> CmdError {
        CmdError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> CmdError {
        CmdError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<qrec_core::Error> for CmdError {
    fn from(e: qrec_core::Error) -> CmdError {
        use qrec_core::Error;
        let code = match &e {
            Error::InvalidQuiver(_)
            | Error::InvalidRep(_)
            | Error::InvalidMorphism(_)
            | Error::InvalidSplit(_)
            | Error::Unsupported(_) => 2,
            Error::BoundExceeded { .. } | Error::UniverseIncomplete { .. } => 3,
            Error::IsoTestInconclusive { .. }
            | Error::DecomposeInconclusive { .. }
            | Error::ClosureInconclusive { .. } => 4,
            Error::HypothesisFailed { .. } => 5,
        };
        CmdError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qrec",
    version,
    about = "Exact quiver representation computations over a prime field"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the indecomposable representations of a quiver file.
    Indec {
        /// Quiver description (JSON).
        quiver: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Randomness seed (overrides QREC_SEED; default 42).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Enumerate subcategories of one kind in canonical order.
    Subcats {
        /// Quiver description (JSON).
        quiver: PathBuf,
        /// ice | torsion | wide | epibrick | monobrick
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also write the inclusion-order Hasse diagram as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Randomness seed (overrides QREC_SEED; default 42).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Move a subcategory through the vertex split along one direction.
    Transfer {
        /// Quiver description with a split (JSON).
        quiver: PathBuf,
        /// Subcategory description (JSON), read on the direction's source side.
        subcat: PathBuf,
        /// Direction: from_i_side, from_j_side_shriek, from_j_side_star,
        /// restrict_j, restrict_i_upper, restrict_i_shriek, preimage_j,
        /// preimage_i_upper, preimage_i_shriek.
        #[arg(long)]
        map: String,
        /// ice | torsion
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Randomness seed (overrides QREC_SEED; default 42).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a verification suite on a split quiver file.
    Verify {
        /// Quiver description with a split (JSON).
        quiver: PathBuf,
        /// axioms | bijection | subrecollement | bricks
        #[arg(long)]
        suite: String,
        /// Sample count for the axiom suite.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Randomness seed (overrides QREC_SEED; default 42).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Regenerate the worked example tables from a split quiver file.
    Reproduce {
        /// Quiver description with a split (JSON).
        quiver: PathBuf,
        /// Which example to regenerate; only "tables" exists.
        #[arg(long)]
        example: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Randomness seed (overrides QREC_SEED; default 42).
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Seed precedence: --seed flag, then QREC_SEED, then 42.
fn resolve_seed(flag: Option<u64>) -> Result<u64, CmdError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("QREC_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CmdError::parse(format!("QREC_SEED is not an unsigned integer: {v}"))),
        Err(_) => Ok(42),
    }
}

fn run(cli: Cli) -> Result<i32, CmdError> {
    match cli.cmd {
        Cmd::Indec {
            quiver,
            format,
            seed,
        } => commands::indec::run(&quiver, format, resolve_seed(seed)?),
        Cmd::Subcats {
            quiver,
            kind,
            format,
            dot,
            seed,
        } => commands::subcats::run(&quiver, &kind, format, dot.as_deref(), resolve_seed(seed)?),
        Cmd::Transfer {
            quiver,
            subcat,
            map,
            kind,
            format,
            seed,
        } => commands::transfer::run(&quiver, &subcat, &map, &kind, format, resolve_seed(seed)?),
        Cmd::Verify {
            quiver,
            suite,
            samples,
            format,
            seed,
        } => commands::verify::run(&quiver, &suite, samples, format, resolve_seed(seed)?),
        Cmd::Reproduce {
            quiver,
            example,
            format,
            seed,
        } => commands::reproduce::run(&quiver, &example, format, resolve_seed(seed)?),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_error_kind() {
        use qrec_core::Error;
        let cases: Vec<(Error, i32)> = vec![
            (Error::InvalidQuiver("x".into()), 2),
            (Error::InvalidSplit("x".into()), 2),
            (Error::Unsupported("x".into()), 2),
            (Error::BoundExceeded { what: "x".into() }, 3),
            (Error::UniverseIncomplete { object: "x".into() }, 3),
            (Error::IsoTestInconclusive { hom_dim: 30 }, 4),
            (Error::DecomposeInconclusive { end_dim: 50 }, 4),
            (Error::ClosureInconclusive { reason: "x".into() }, 4),
            (
                Error::HypothesisFailed {
                    operation: "o".into(),
                    hypothesis: "h".into(),
                    witness: "w".into(),
                },
                5,
            ),
        ];
        for (e, code) in cases {
            assert_eq!(CmdError::from(e).code, code);
        }
    }

    #[test]
    fn seed_flag_wins() {
        assert_eq!(resolve_seed(Some(7)).unwrap(), 7);
    }
}
