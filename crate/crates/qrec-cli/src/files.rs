//! Input file formats.
//!
//! Two JSON shapes come in from disk: a quiver description (with an
//! optional vertex split and optional caps) and a subcategory description
//! (a member list). Everything else the commands need is built from these
//! through the core crate.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use qrec_core::recollement::Recollement;
use qrec_core::split::VertexSplit;
use qrec_core::subcat::Subcat;
use qrec_core::{Quiver, Universe};

use crate::CmdError;

fn default_p() -> u32 {
    2
}

fn default_dim_bound() -> usize {
    30
}

fn default_mult_cap() -> usize {
    2
}

/// A quiver description file: field characteristic, vertex labels, named
/// arrows, and optional split and caps.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    #[serde(default = "default_p")]
    pub p: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub split: Option<SplitSpec>,
    #[serde(default = "default_dim_bound")]
    pub dim_bound: usize,
    #[serde(default = "default_mult_cap")]
    pub mult_cap: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    pub quotient_part: Vec<String>,
}

/// A subcategory description file: the additive generators, each either a
/// stacked name ("4/1/2") or an explicit dimension vector.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubcatFile {
    pub members: Vec<MemberSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MemberSpec {
    Name(String),
    Dims { dims: Vec<usize> },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CmdError::parse(format!("{}: {e}", path.display())))
}

pub fn load_quiver_file(path: &Path) -> Result<QuiverFile, CmdError> {
    read_json(path)
}

pub fn load_subcat_file(path: &Path) -> Result<SubcatFile, CmdError> {
    read_json(path)
}

pub fn build_quiver(file: &QuiverFile) -> Result<Quiver, CmdError> {
    let arrows = file
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.from.clone(), a.to.clone()))
        .collect();
    Quiver::new(file.vertices.clone(), arrows).map_err(CmdError::from)
}

/// Resolves a member list against a universe. Names must match a universe
/// object exactly; dimension vectors must match exactly one.
pub fn resolve_members(uni: &Universe, file: &SubcatFile) -> Result<Subcat, CmdError> {
    let mut out = Subcat::empty();
    for member in &file.members {
        let idx = match member {
            MemberSpec::Name(name) => uni.index_of_name(name).ok_or_else(|| {
                CmdError::parse(format!(
                    "no universe object named {name} (known: {})",
                    uni.names().join(", ")
                ))
            })?,
            MemberSpec::Dims { dims } => {
                let hits: Vec<usize> = (0..uni.len())
                    .filter(|&i| uni.object(i).dims() == dims.as_slice())
                    .collect();
                match hits.as_slice() {
                    [one] => *one,
                    [] => {
                        return Err(CmdError::parse(format!(
                            "no universe object has dimension vector {dims:?}"
                        )))
                    }
                    _ => {
                        return Err(CmdError::parse(format!(
                            "dimension vector {dims:?} matches more than one object; \
                             use its name instead"
                        )))
                    }
                }
            }
        };
        out.insert(idx);
    }
    Ok(out)
}

/// A universe that misses indecomposables would silently skew every
/// listing, so an incomplete one is refused outright.
fn require_complete(uni: &Universe, what: &str, dim_bound: usize) -> Result<(), CmdError> {
    if uni.complete() {
        Ok(())
    } else {
        Err(CmdError {
            code: 3,
            message: format!(
                "the {what} universe is incomplete at dimension bound {dim_bound}; raise dim_bound"
            ),
        })
    }
}

/// A recollement plus the three universes its transfers act on, built from
/// one quiver file carrying a split.
pub struct SplitWorkspace {
    pub rec: Recollement,
    pub ambient: Universe,
    pub i_side: Universe,
    pub j_side: Universe,
    pub mult_cap: usize,
}

impl SplitWorkspace {
    pub fn build(file: &QuiverFile, seed: u64) -> Result<SplitWorkspace, CmdError> {
        let quiver = build_quiver(file)?;
        let split_spec = file.split.as_ref().ok_or_else(|| {
            CmdError::parse("the quiver file has no split; add \"split\": {\"quotient_part\": [..]}")
        })?;
        let split = VertexSplit::new(&quiver, &split_spec.quotient_part)?;
        let rec = Recollement::new(split, file.p)?;
        let ambient = Universe::new(rec.ambient_quiver().clone(), file.p, file.dim_bound, seed)?;
        let i_side = Universe::new(rec.i_quiver().clone(), file.p, file.dim_bound, seed)?;
        let j_side = Universe::new(rec.j_quiver().clone(), file.p, file.dim_bound, seed)?;
        require_complete(&ambient, "ambient", file.dim_bound)?;
        require_complete(&i_side, "i-side", file.dim_bound)?;
        require_complete(&j_side, "j-side", file.dim_bound)?;
        Ok(SplitWorkspace {
            rec,
            ambient,
            i_side,
            j_side,
            mult_cap: file.mult_cap,
        })
    }
}

/// Builds the plain (no split) universe of a quiver file.
pub fn build_universe(file: &QuiverFile, seed: u64) -> Result<Universe, CmdError> {
    let quiver = build_quiver(file)?;
    let uni = Universe::new(Arc::new(quiver), file.p, file.dim_bound, seed)?;
    require_complete(&uni, "quiver's", file.dim_bound)?;
    Ok(uni)
}
