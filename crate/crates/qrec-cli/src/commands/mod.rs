//! Subcommand implementations.

pub mod indec;
pub mod reproduce;
pub mod subcats;
pub mod transfer;
pub mod verify;

use qrec_core::recollement::Side;
use qrec_core::subcat::SubcatKind;

use crate::CmdError;

pub const ALL_KINDS: [SubcatKind; 5] = [
    SubcatKind::Ice,
    SubcatKind::Torsion,
    SubcatKind::Wide,
    SubcatKind::Epibrick,
    SubcatKind::Monobrick,
];

pub fn parse_kind(s: &str) -> Result<SubcatKind, CmdError> {
    ALL_KINDS
        .into_iter()
        .find(|k| k.label() == s)
        .ok_or_else(|| {
            let known: Vec<&str> = ALL_KINDS.iter().map(|k| k.label()).collect();
            CmdError::parse(format!("unknown kind {s}; expected one of {}", known.join(", ")))
        })
}

pub fn side_label(side: Side) -> &'static str {
    match side {
        Side::Ambient => "ambient",
        Side::ISide => "i-side",
        Side::JSide => "j-side",
    }
}
