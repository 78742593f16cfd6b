//! Exact computations with finite-dimensional representations of acyclic
//! quivers over a prime field F_p.
//!
//! The crate builds up in layers:
//!
//! * [`fp`] — dense matrices over F_p with exact row reduction (kernels,
//!   images, solving, subspace lattice helpers). No floating point anywhere.
//! * [`quiver`], [`rep`] — quivers, representations, morphisms, and the exact
//!   structure of the category: kernels, images, cokernels, direct sums.
//! * [`hom`], [`ext`] — Hom bases, isomorphism testing, Krull-Schmidt
//!   decomposition, bricks, extension groups with explicit middle terms, and
//!   the Euler pairing.
//! * [`universe`] — the finite list of indecomposables up to a dimension
//!   bound, with cached Hom/Ext dimension tables and stacked names.
//! * [`subcat`] — add-closed subcategories of a universe and the closure
//!   predicates (images/cokernels/extensions, quotients, kernels) used to
//!   recognise ICE-closed subcategories, torsion classes and wide
//!   subcategories, plus epibrick/monobrick tests and enumeration.
//! * [`split`], [`recollement`] — a two-sided vertex split of the quiver and
//!   the six functors of the induced recollement of module categories,
//!   together with a self-contained axiom verifier.
//! * [`transfer`] — moving subcategories between the three categories of a
//!   recollement along the six functors, with every hypothesis checked and
//!   every conclusion re-verified, plus the restriction/preimage bijection,
//!   sub-recollement checks and brick gluing.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod ext;
pub mod fp;
pub mod hom;
pub mod quiver;
pub mod recollement;
pub mod rep;
pub mod sample;
pub mod split;
pub mod subcat;
pub mod transfer;
pub mod universe;

pub use error::Error;
pub use fp::FpMat;
pub use quiver::Quiver;
pub use rep::{Rep, RepMor, ShortExact};
pub use universe::Universe;
