//! The library-wide error type.
//!
//! Inconclusive outcomes are deliberately separate variants: every
//! enumeration in this crate is guarded by a threshold, and hitting a
//! threshold must surface as "could not decide" rather than as a wrong
//! answer.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Quiver-level validation failed (cycle, duplicate label, bad arrow).
    InvalidQuiver(String),
    /// Representation data is inconsistent (matrix shapes, entries, caps).
    InvalidRep(String),
    /// Morphism components do not commute with the arrow maps.
    InvalidMorphism(String),
    /// A vertex split is ill-formed (unknown labels, empty part, or crossing
    /// arrows running in both directions).
    InvalidSplit(String),
    /// A configured bound was exceeded (dimension bound, enumeration cap).
    BoundExceeded { what: String },
    /// The isomorphism test exhausted its budget without a decision.
    IsoTestInconclusive { hom_dim: usize },
    /// The endomorphism space is too large to search for idempotents.
    DecomposeInconclusive { end_dim: usize },
    /// A closure step could not be completed within its thresholds.
    ClosureInconclusive { reason: String },
    /// A transfer or gluing hypothesis does not hold; carries a witness.
    HypothesisFailed {
        operation: String,
        hypothesis: String,
        witness: String,
    },
    /// A functor image has a summand matching nothing in the target
    /// universe (the universe is incomplete for this computation).
    UniverseIncomplete { object: String },
    /// The operation does not apply to the given parameters (wrong kind,
    /// out-of-range member index).
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidQuiver(msg) => write!(f, "invalid quiver: {msg}"),
            Error::InvalidRep(msg) => write!(f, "invalid representation: {msg}"),
            Error::InvalidMorphism(msg) => write!(f, "invalid morphism: {msg}"),
            Error::InvalidSplit(msg) => write!(f, "invalid vertex split: {msg}"),
            Error::BoundExceeded { what } => write!(f, "bound exceeded: {what}"),
            Error::IsoTestInconclusive { hom_dim } => write!(
                f,
                "isomorphism test inconclusive: Hom space of dimension {hom_dim} is too large to search"
            ),
            Error::DecomposeInconclusive { end_dim } => write!(
                f,
                "decomposition inconclusive: End space of dimension {end_dim} is too large to search"
            ),
            Error::ClosureInconclusive { reason } => {
                write!(f, "closure inconclusive: {reason}")
            }
            Error::HypothesisFailed {
                operation,
                hypothesis,
                witness,
            } => write!(
                f,
                "hypothesis failed in {operation}: {hypothesis} (witness: {witness})"
            ),
            Error::UniverseIncomplete { object } => write!(
                f,
                "universe incomplete: no object matches {object}"
            ),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}
