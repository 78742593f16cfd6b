//! The six-functor diagram attached to a vertex split, with honest
//! adjunctions and a computed exactness report.
//!
//! Conventions: for a split with i-side part V' and quotient part V'',
//! restriction to V'' is a quotient functor whose kernel is the image of
//! extension by zero from V'. The six functors are
//!
//! * `i_*`  extension by zero from the i-side (exact, fully faithful);
//! * `i^*`  left adjoint: quotient by the subrepresentation generated by
//!   the V''-components, then restrict to V';
//! * `i^!`  right adjoint: largest subrepresentation supported on V',
//!   then restrict;
//! * `j^*`  restriction to V'' (exact);
//! * `j_!`  left adjoint: the free extension, vertexwise a direct sum of
//!   corner values over incoming slots (exact, fully faithful);
//! * `j_*`  right adjoint: the cofree extension over outgoing slots
//!   (exact, fully faithful).
//!
//! Orientation of the crossing arrows decides the rest of the exactness
//! report: when every crossing arrow enters the quotient part, i^* is plain
//! restriction and exact while i^! is only left exact, and dually. The
//! intermediate extension is the image of the canonical map j_! -> j_*.
//!
//! `verify_axioms` spot-checks the whole structure on deterministic random
//! samples: adjunction dimension identities, full faithfulness, the corner
//! composite isomorphisms, the support characterization of the kernel of
//! restriction, both four-term unit/counit sequences, triangle identities,
//! exactness of the functors the report marks exact, functoriality, and the
//! vanishing composites across the diagram.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::fp::{validate_prime, FpMat};
use crate::hom::{hom_dim, is_isomorphic};
use crate::quiver::Quiver;
use crate::rep::{Rep, RepMor, ShortExact};
use crate::sample::Sampler;
use crate::split::{Orientation, VertexSplit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Functor {
    /// i^*: ambient -> i-side, left adjoint of extension by zero.
    IUpperStar,
    /// i_*: i-side -> ambient, extension by zero.
    ILowerStar,
    /// i^!: ambient -> i-side, right adjoint of extension by zero.
    IShriek,
    /// j_!: j-side -> ambient, left adjoint of restriction.
    JLowerShriek,
    /// j^*: ambient -> j-side, restriction.
    JUpperStar,
    /// j_*: j-side -> ambient, right adjoint of restriction.
    JLowerStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Ambient,
    ISide,
    JSide,
}

impl Functor {
    pub const ALL: [Functor; 6] = [
        Functor::IUpperStar,
        Functor::ILowerStar,
        Functor::IShriek,
        Functor::JLowerShriek,
        Functor::JUpperStar,
        Functor::JLowerStar,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Functor::IUpperStar => "i^*",
            Functor::ILowerStar => "i_*",
            Functor::IShriek => "i^!",
            Functor::JLowerShriek => "j_!",
            Functor::JUpperStar => "j^*",
            Functor::JLowerStar => "j_*",
        }
    }

    pub fn domain(self) -> Side {
        match self {
            Functor::IUpperStar | Functor::IShriek | Functor::JUpperStar => Side::Ambient,
            Functor::ILowerStar => Side::ISide,
            Functor::JLowerShriek | Functor::JLowerStar => Side::JSide,
        }
    }

    pub fn codomain(self) -> Side {
        match self {
            Functor::IUpperStar | Functor::IShriek => Side::ISide,
            Functor::JUpperStar => Side::JSide,
            _ => Side::Ambient,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExactnessEntry {
    pub functor: Functor,
    pub exact: bool,
    pub reason: &'static str,
}

/// Which functors are exact for this split, plus the orientation-matched
/// corner pair (one i-side and one j-side functor on the same adjoint side)
/// used when a single canonical exact branch has to be picked.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub orientation: Orientation,
    pub entries: Vec<ExactnessEntry>,
    pub matched_i: Functor,
    pub matched_j: Functor,
}

impl ExactnessReport {
    pub fn is_exact(&self, f: Functor) -> bool {
        self.entries
            .iter()
            .find(|e| e.functor == f)
            .map(|e| e.exact)
            .unwrap_or(false)
    }
}

/// Per-vertex canonical subspace bases inside an ambient representation.
type SubTuple = Vec<FpMat>;

/// Slot layout of a free or cofree extension: `dims` per ambient vertex and,
/// for each i-side vertex, the (arrow, offset) list of its summands.
struct SlotShape {
    dims: Vec<usize>,
    slots: Vec<Vec<(usize, usize)>>,
}

pub struct Recollement {
    split: VertexSplit,
    p: u32,
    swap_j: bool,
    amb: Arc<Quiver>,
    iq: Arc<Quiver>,
    jq: Arc<Quiver>,
}

impl Recollement {
    pub fn new(split: VertexSplit, p: u32) -> Result<Recollement, Error> {
        validate_prime(p)?;
        let amb = Arc::new(split.ambient().clone());
        let iq = Arc::new(split.i_quiver().clone());
        let jq = Arc::new(split.j_quiver().clone());
        Ok(Recollement {
            split,
            p,
            swap_j: false,
            amb,
            iq,
            jq,
        })
    }

    /// A deliberately broken copy whose two corner extensions from the
    /// j-side trade formulas; the axiom suite must catch it.
    pub fn with_swapped_corner_adjoints(&self) -> Recollement {
        Recollement {
            split: self.split.clone(),
            p: self.p,
            swap_j: true,
            amb: self.amb.clone(),
            iq: self.iq.clone(),
            jq: self.jq.clone(),
        }
    }

    pub fn split(&self) -> &VertexSplit {
        &self.split
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_quiver(&self) -> &Arc<Quiver> {
        &self.amb
    }

    pub fn i_quiver(&self) -> &Arc<Quiver> {
        &self.iq
    }

    pub fn j_quiver(&self) -> &Arc<Quiver> {
        &self.jq
    }

    pub fn side_quiver(&self, side: Side) -> &Arc<Quiver> {
        match side {
            Side::Ambient => &self.amb,
            Side::ISide => &self.iq,
            Side::JSide => &self.jq,
        }
    }

    /// The computed exactness report. Extension by zero, restriction, and
    /// both j-side extensions are exact for every uniform split (the latter
    /// two are vertexwise direct sums of corner evaluations); of the two
    /// i-side corner functors exactly the one not forced to take a
    /// (co)kernel across the crossing arrows is exact.
    pub fn exactness(&self) -> ExactnessReport {
        let o = self.split.orientation();
        let i_upper_exact = o != Orientation::IntoISide;
        let i_shriek_exact = o != Orientation::IntoQuotient;
        let entries = alloc::vec![
            ExactnessEntry {
                functor: Functor::IUpperStar,
                exact: i_upper_exact,
                reason: if i_upper_exact {
                    "no crossing arrow enters the i-side, so the corner quotient is trivial and i^* is restriction"
                } else {
                    "crossing arrows enter the i-side, so i^* takes a cokernel and is only right exact"
                },
            },
            ExactnessEntry {
                functor: Functor::ILowerStar,
                exact: true,
                reason: "extension by zero is exact",
            },
            ExactnessEntry {
                functor: Functor::IShriek,
                exact: i_shriek_exact,
                reason: if i_shriek_exact {
                    "no crossing arrow leaves the i-side, so every i-side-supported tuple is a subrepresentation and i^! is restriction"
                } else {
                    "crossing arrows leave the i-side, so i^! takes a kernel and is only left exact"
                },
            },
            ExactnessEntry {
                functor: Functor::JLowerShriek,
                exact: true,
                reason: "vertexwise a direct sum of corner evaluations (extension by zero when nothing crosses into the i-side)",
            },
            ExactnessEntry {
                functor: Functor::JUpperStar,
                exact: true,
                reason: "restriction is exact",
            },
            ExactnessEntry {
                functor: Functor::JLowerStar,
                exact: true,
                reason: "vertexwise a direct sum of corner evaluations (extension by zero when nothing crosses into the quotient part)",
            },
        ];
        let (matched_i, matched_j) = match o {
            Orientation::IntoISide => (Functor::IShriek, Functor::JLowerStar),
            _ => (Functor::IUpperStar, Functor::JLowerShriek),
        };
        ExactnessReport {
            orientation: o,
            entries,
            matched_i,
            matched_j,
        }
    }

    // ----- object-level functors ---------------------------------------------

    pub fn apply(&self, f: Functor, x: &Rep) -> Result<Rep, Error> {
        self.check_side(f.domain(), x.quiver(), x.p())?;
        let f = self.effective(f);
        Ok(match f {
            Functor::IUpperStar => {
                let n = self.generated_from_j(x);
                let (qt, _) = x.quotient(&n)?;
                self.restrict(&qt, false)
            }
            Functor::ILowerStar => self.extend_by_zero(x, false),
            Functor::IShriek => {
                let t = self.largest_sub_on_i(x);
                let (sub, _) = x.subrep(&t)?;
                self.restrict(&sub, false)
            }
            Functor::JLowerShriek => self.free_rep(x),
            Functor::JUpperStar => self.restrict(x, true),
            Functor::JLowerStar => self.cofree_rep(x),
        })
    }

    pub fn apply_mor(&self, f: Functor, m: &RepMor) -> Result<RepMor, Error> {
        self.check_side(f.domain(), m.source().quiver(), m.source().p())?;
        let f = self.effective(f);
        Ok(match f {
            Functor::IUpperStar => self.i_upper_mor(m)?,
            Functor::ILowerStar => {
                let src = self.extend_by_zero(m.source(), false);
                let tgt = self.extend_by_zero(m.target(), false);
                let comps = self.extend_comps(m.comps(), false);
                RepMor::new_unchecked(src, tgt, comps)
            }
            Functor::IShriek => self.i_shriek_mor(m)?,
            Functor::JLowerShriek => self.free_mor(m),
            Functor::JUpperStar => {
                let src = self.restrict(m.source(), true);
                let tgt = self.restrict(m.target(), true);
                let comps: Vec<FpMat> = self
                    .split
                    .j_vertices()
                    .iter()
                    .map(|&v| m.comp(v).clone())
                    .collect();
                RepMor::new_unchecked(src, tgt, comps)
            }
            Functor::JLowerStar => self.cofree_mor(m),
        })
    }

    /// The image of the canonical map from the free to the cofree
    /// extension; restriction returns it to the input, and both i-side
    /// corner functors kill it.
    pub fn intermediate_extension(&self, y: &Rep) -> Result<Rep, Error> {
        let gamma = self.intermediate_map(y)?;
        let (img, _, _) = gamma.image();
        Ok(img)
    }

    /// The canonical morphism j_! Y -> j_* Y (identity over the quotient
    /// part, zero over the i-side).
    pub fn intermediate_map(&self, y: &Rep) -> Result<RepMor, Error> {
        self.check_side(Side::JSide, y.quiver(), y.p())?;
        let src = self.apply(Functor::JLowerShriek, y)?;
        let tgt = self.apply(Functor::JLowerStar, y)?;
        let comps: Vec<FpMat> = (0..self.ambient_quiver().vertex_count())
            .map(|v| {
                if self.split.is_j_vertex(v) {
                    FpMat::identity(self.p, src.dim(v))
                } else {
                    FpMat::zero(self.p, tgt.dim(v), src.dim(v))
                }
            })
            .collect();
        RepMor::new(src, tgt, comps)
    }

    // ----- units and counits at an ambient object ------------------------------

    /// eta: M -> i_* i^* M, the quotient maps over the i-side.
    pub fn unit_i_upper(&self, m: &Rep) -> Result<RepMor, Error> {
        self.check_side(Side::Ambient, m.quiver(), m.p())?;
        let n = self.generated_from_j(m);
        let (qt, proj) = m.quotient(&n)?;
        let target = self.extend_by_zero(&self.restrict(&qt, false), false);
        Ok(RepMor::new_unchecked(
            m.clone(),
            target,
            proj.comps().to_vec(),
        ))
    }

    /// epsilon: i_* i^! M -> M, the inclusion of the largest i-side
    /// subrepresentation.
    pub fn counit_i_shriek(&self, m: &Rep) -> Result<RepMor, Error> {
        self.check_side(Side::Ambient, m.quiver(), m.p())?;
        let t = self.largest_sub_on_i(m);
        let (_, inc) = m.subrep(&t)?;
        let source = self.extend_by_zero(&self.apply(Functor::IShriek, m)?, false);
        Ok(RepMor::new_unchecked(
            source,
            m.clone(),
            inc.comps().to_vec(),
        ))
    }

    /// epsilon: j_! j^* M -> M; over the quotient part the identity, over
    /// the i-side assembled slotwise through the arrow maps.
    pub fn counit_j_shriek(&self, m: &Rep) -> Result<RepMor, Error> {
        self.check_side(Side::Ambient, m.quiver(), m.p())?;
        let y = self.apply(Functor::JUpperStar, m)?;
        let source = self.free_rep_raw(&y);
        let shape = self.free_shape(&y);
        let q = self.ambient_quiver();
        let mut comps: Vec<Option<FpMat>> = alloc::vec![None; q.vertex_count()];
        for &v in q.topo() {
            if self.split.is_j_vertex(v) {
                comps[v] = Some(FpMat::identity(self.p, m.dim(v)));
            } else {
                let parts: Vec<FpMat> = shape.slots[v]
                    .iter()
                    .map(|&(a, _)| {
                        let src = q.arrow(a).source;
                        let prior = comps[src].as_ref().expect("topological order");
                        m.map(a).mul(prior)
                    })
                    .collect();
                let refs: Vec<&FpMat> = parts.iter().collect();
                comps[v] = Some(if refs.is_empty() {
                    FpMat::zero(self.p, m.dim(v), 0)
                } else {
                    FpMat::hstack_all(self.p, &refs)
                });
            }
        }
        let comps: Vec<FpMat> = comps.into_iter().map(|c| c.expect("all vertices")).collect();
        Ok(RepMor::new_unchecked(source, m.clone(), comps))
    }

    /// eta: M -> j_* j^* M; over the quotient part the identity, over the
    /// i-side assembled slotwise through the arrow maps.
    pub fn unit_j_star(&self, m: &Rep) -> Result<RepMor, Error> {
        self.check_side(Side::Ambient, m.quiver(), m.p())?;
        let y = self.apply(Functor::JUpperStar, m)?;
        let target = self.cofree_rep_raw(&y);
        let shape = self.cofree_shape(&y);
        let q = self.ambient_quiver();
        let mut comps: Vec<Option<FpMat>> = alloc::vec![None; q.vertex_count()];
        for &v in q.topo().iter().rev() {
            if self.split.is_j_vertex(v) {
                comps[v] = Some(FpMat::identity(self.p, m.dim(v)));
            } else {
                let parts: Vec<FpMat> = shape.slots[v]
                    .iter()
                    .map(|&(a, _)| {
                        let tgt = q.arrow(a).target;
                        let later = comps[tgt].as_ref().expect("reverse topological order");
                        later.mul(m.map(a))
                    })
                    .collect();
                let refs: Vec<&FpMat> = parts.iter().collect();
                comps[v] = Some(if refs.is_empty() {
                    FpMat::zero(self.p, 0, m.dim(v))
                } else {
                    FpMat::vstack_all(self.p, &refs)
                });
            }
        }
        let comps: Vec<FpMat> = comps.into_iter().map(|c| c.expect("all vertices")).collect();
        Ok(RepMor::new_unchecked(m.clone(), target, comps))
    }

    // ----- construction internals ---------------------------------------------

    /// Swaps the two j-side extensions when the mutation hook is active.
    fn effective(&self, f: Functor) -> Functor {
        if self.swap_j {
            match f {
                Functor::JLowerShriek => Functor::JLowerStar,
                Functor::JLowerStar => Functor::JLowerShriek,
                other => other,
            }
        } else {
            f
        }
    }

    fn check_side(&self, side: Side, quiver: &Quiver, p: u32) -> Result<(), Error> {
        if p != self.p {
            return Err(Error::InvalidRep(format!(
                "characteristic {p} does not match the recollement's {}",
                self.p
            )));
        }
        let expected = self.side_quiver(side);
        if quiver != expected.as_ref() {
            return Err(Error::InvalidRep(format!(
                "representation lives on the wrong quiver for this functor (expected the {} quiver)",
                match side {
                    Side::Ambient => "ambient",
                    Side::ISide => "i-side",
                    Side::JSide => "quotient-part",
                }
            )));
        }
        Ok(())
    }

    /// Canonical bases of the subrepresentation generated by the
    /// components over the quotient part (full there, propagated forward
    /// along arrows into the i-side).
    fn generated_from_j(&self, m: &Rep) -> SubTuple {
        let q = self.ambient_quiver();
        let mut bases: Vec<Option<FpMat>> = alloc::vec![None; q.vertex_count()];
        for &v in q.topo() {
            if self.split.is_j_vertex(v) {
                bases[v] = Some(FpMat::identity(self.p, m.dim(v)));
                continue;
            }
            let mut acc = FpMat::zero(self.p, m.dim(v), 0);
            for a in q.arrows_into(v) {
                let src = q.arrow(a).source;
                let prior = bases[src].as_ref().expect("topological order");
                acc = acc.join(&m.map(a).mul(prior));
            }
            bases[v] = Some(acc);
        }
        bases.into_iter().map(|b| b.expect("all vertices")).collect()
    }

    /// Canonical bases of the largest subrepresentation supported on the
    /// i-side (zero over the quotient part, propagated backward as
    /// preimages).
    fn largest_sub_on_i(&self, m: &Rep) -> SubTuple {
        let q = self.ambient_quiver();
        let mut bases: Vec<Option<FpMat>> = alloc::vec![None; q.vertex_count()];
        for &v in q.topo().iter().rev() {
            if self.split.is_j_vertex(v) {
                bases[v] = Some(FpMat::zero(self.p, m.dim(v), 0));
                continue;
            }
            let mut acc = FpMat::identity(self.p, m.dim(v));
            for a in q.arrows_from(v) {
                let tgt = q.arrow(a).target;
                let later = bases[tgt].as_ref().expect("reverse topological order");
                acc = acc.meet(&m.map(a).preimage_of(later));
            }
            bases[v] = Some(acc.column_canon());
        }
        bases.into_iter().map(|b| b.expect("all vertices")).collect()
    }

    /// Restriction of an ambient representation to one part; components
    /// outside the part are simply dropped.
    fn restrict(&self, m: &Rep, j_side: bool) -> Rep {
        let (_, vertices, arrows) = self.split.part(j_side);
        let corner = if j_side { &self.jq } else { &self.iq };
        let dims: Vec<usize> = vertices.iter().map(|&v| m.dim(v)).collect();
        let maps: Vec<FpMat> = arrows.iter().map(|&a| m.map(a).clone()).collect();
        Rep::new_internal(corner.clone(), self.p, dims, maps)
            .expect("restriction keeps consistent shapes")
    }

    fn extend_by_zero(&self, x: &Rep, j_side: bool) -> Rep {
        let q = self.ambient_quiver();
        let (_, _, part_arrows) = self.split.part(j_side);
        let in_part = |v: usize| self.split.is_j_vertex(v) == j_side;
        let dims: Vec<usize> = (0..q.vertex_count())
            .map(|v| {
                if in_part(v) {
                    x.dim(self.split.corner_index(v))
                } else {
                    0
                }
            })
            .collect();
        let maps: Vec<FpMat> = (0..q.arrow_count())
            .map(|a| {
                if let Some(k) = part_arrows.iter().position(|&b| b == a) {
                    x.map(k).clone()
                } else {
                    let arr = q.arrow(a);
                    FpMat::zero(self.p, dims[arr.target], dims[arr.source])
                }
            })
            .collect();
        Rep::new_internal(self.amb.clone(), self.p, dims, maps)
            .expect("extension by zero keeps consistent shapes")
    }

    fn extend_comps(&self, comps: &[FpMat], j_side: bool) -> Vec<FpMat> {
        let q = self.ambient_quiver();
        (0..q.vertex_count())
            .map(|v| {
                if self.split.is_j_vertex(v) == j_side {
                    comps[self.split.corner_index(v)].clone()
                } else {
                    FpMat::zero(self.p, 0, 0)
                }
            })
            .collect()
    }

    /// Slot layout of the free extension of a quotient-part
    /// representation: i-side vertices carry one summand per incoming
    /// arrow, in arrow order.
    fn free_shape(&self, y: &Rep) -> SlotShape {
        let q = self.ambient_quiver();
        let n = q.vertex_count();
        let mut dims = alloc::vec![0usize; n];
        let mut slots: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n];
        for &v in q.topo() {
            if self.split.is_j_vertex(v) {
                dims[v] = y.dim(self.split.corner_index(v));
                continue;
            }
            let mut off = 0;
            for a in q.arrows_into(v) {
                let src = q.arrow(a).source;
                slots[v].push((a, off));
                off += dims[src];
            }
            dims[v] = off;
        }
        SlotShape { dims, slots }
    }

    fn cofree_shape(&self, y: &Rep) -> SlotShape {
        let q = self.ambient_quiver();
        let n = q.vertex_count();
        let mut dims = alloc::vec![0usize; n];
        let mut slots: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n];
        for &v in q.topo().iter().rev() {
            if self.split.is_j_vertex(v) {
                dims[v] = y.dim(self.split.corner_index(v));
                continue;
            }
            let mut off = 0;
            for a in q.arrows_from(v) {
                let tgt = q.arrow(a).target;
                slots[v].push((a, off));
                off += dims[tgt];
            }
            dims[v] = off;
        }
        SlotShape { dims, slots }
    }

    fn free_rep(&self, y: &Rep) -> Rep {
        self.free_rep_raw(y)
    }

    fn free_rep_raw(&self, y: &Rep) -> Rep {
        let q = self.ambient_quiver();
        let shape = self.free_shape(y);
        let maps: Vec<FpMat> = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                let (v, w) = (arr.source, arr.target);
                if self.split.is_j_vertex(w) {
                    if self.split.is_j_vertex(v) {
                        let k = self
                            .split
                            .j_arrows()
                            .iter()
                            .position(|&b| b == a)
                            .expect("internal arrow");
                        y.map(k).clone()
                    } else {
                        // A crossing into the quotient part forces the
                        // source slot sum to be empty.
                        FpMat::zero(self.p, shape.dims[w], shape.dims[v])
                    }
                } else {
                    // Inclusion of the source summand into its slot.
                    let off = shape.slots[w]
                        .iter()
                        .find(|&&(b, _)| b == a)
                        .map(|&(_, o)| o)
                        .expect("slot for incoming arrow");
                    let mut mat = FpMat::zero(self.p, shape.dims[w], shape.dims[v]);
                    for i in 0..shape.dims[v] {
                        mat.set(off + i, i, 1);
                    }
                    mat
                }
            })
            .collect();
        Rep::new_internal(self.amb.clone(), self.p, shape.dims, maps)
            .expect("the free extension keeps consistent shapes")
    }

    fn cofree_rep(&self, y: &Rep) -> Rep {
        self.cofree_rep_raw(y)
    }

    fn cofree_rep_raw(&self, y: &Rep) -> Rep {
        let q = self.ambient_quiver();
        let shape = self.cofree_shape(y);
        let maps: Vec<FpMat> = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                let (v, w) = (arr.source, arr.target);
                if self.split.is_j_vertex(v) {
                    if self.split.is_j_vertex(w) {
                        let k = self
                            .split
                            .j_arrows()
                            .iter()
                            .position(|&b| b == a)
                            .expect("internal arrow");
                        y.map(k).clone()
                    } else {
                        FpMat::zero(self.p, shape.dims[w], shape.dims[v])
                    }
                } else {
                    // Projection onto the slot indexed by this arrow.
                    let off = shape.slots[v]
                        .iter()
                        .find(|&&(b, _)| b == a)
                        .map(|&(_, o)| o)
                        .expect("slot for outgoing arrow");
                    let mut mat = FpMat::zero(self.p, shape.dims[w], shape.dims[v]);
                    for i in 0..shape.dims[w] {
                        mat.set(i, off + i, 1);
                    }
                    mat
                }
            })
            .collect();
        Rep::new_internal(self.amb.clone(), self.p, shape.dims, maps)
            .expect("the cofree extension keeps consistent shapes")
    }

    fn free_mor(&self, m: &RepMor) -> RepMor {
        let q = self.ambient_quiver();
        let src = self.free_rep_raw(m.source());
        let tgt = self.free_rep_raw(m.target());
        let src_shape = self.free_shape(m.source());
        let tgt_shape = self.free_shape(m.target());
        let mut comps: Vec<Option<FpMat>> = alloc::vec![None; q.vertex_count()];
        for &v in q.topo() {
            if self.split.is_j_vertex(v) {
                comps[v] = Some(m.comp(self.split.corner_index(v)).clone());
                continue;
            }
            let mut mat = FpMat::zero(self.p, tgt_shape.dims[v], src_shape.dims[v]);
            for (k, &(a, s_off)) in src_shape.slots[v].iter().enumerate() {
                let (b, t_off) = tgt_shape.slots[v][k];
                debug_assert_eq!(a, b);
                let srcv = q.arrow(a).source;
                let block = comps[srcv].as_ref().expect("topological order");
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        mat.set(t_off + r, s_off + c, block.get(r, c));
                    }
                }
            }
            comps[v] = Some(mat);
        }
        let comps: Vec<FpMat> = comps.into_iter().map(|c| c.expect("all vertices")).collect();
        RepMor::new_unchecked(src, tgt, comps)
    }

    fn cofree_mor(&self, m: &RepMor) -> RepMor {
        let q = self.ambient_quiver();
        let src = self.cofree_rep_raw(m.source());
        let tgt = self.cofree_rep_raw(m.target());
        let src_shape = self.cofree_shape(m.source());
        let tgt_shape = self.cofree_shape(m.target());
        let mut comps: Vec<Option<FpMat>> = alloc::vec![None; q.vertex_count()];
        for &v in q.topo().iter().rev() {
            if self.split.is_j_vertex(v) {
                comps[v] = Some(m.comp(self.split.corner_index(v)).clone());
                continue;
            }
            let mut mat = FpMat::zero(self.p, tgt_shape.dims[v], src_shape.dims[v]);
            for (k, &(a, s_off)) in src_shape.slots[v].iter().enumerate() {
                let (b, t_off) = tgt_shape.slots[v][k];
                debug_assert_eq!(a, b);
                let tgtv = q.arrow(a).target;
                let block = comps[tgtv].as_ref().expect("reverse topological order");
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        mat.set(t_off + r, s_off + c, block.get(r, c));
                    }
                }
            }
            comps[v] = Some(mat);
        }
        let comps: Vec<FpMat> = comps.into_iter().map(|c| c.expect("all vertices")).collect();
        RepMor::new_unchecked(src, tgt, comps)
    }

    fn i_upper_mor(&self, m: &RepMor) -> Result<RepMor, Error> {
        let n_src = self.generated_from_j(m.source());
        let n_tgt = self.generated_from_j(m.target());
        let (_, proj_src) = m.source().quotient(&n_src)?;
        let (_, proj_tgt) = m.target().quotient(&n_tgt)?;
        let src = self.apply(Functor::IUpperStar, m.source())?;
        let tgt = self.apply(Functor::IUpperStar, m.target())?;
        let comps: Vec<FpMat> = self
            .split
            .i_vertices()
            .iter()
            .map(|&v| {
                let rinv = proj_src.comp(v).right_inverse().expect("projections split");
                proj_tgt.comp(v).mul(m.comp(v)).mul(&rinv)
            })
            .collect();
        Ok(RepMor::new_unchecked(src, tgt, comps))
    }

    fn i_shriek_mor(&self, m: &RepMor) -> Result<RepMor, Error> {
        let t_src = self.largest_sub_on_i(m.source());
        let t_tgt = self.largest_sub_on_i(m.target());
        let src = self.apply(Functor::IShriek, m.source())?;
        let tgt = self.apply(Functor::IShriek, m.target())?;
        let comps: Vec<FpMat> = self
            .split
            .i_vertices()
            .iter()
            .map(|&v| {
                t_tgt[v]
                    .solve(&m.comp(v).mul(&t_src[v]))
                    .expect("the largest supported subrepresentation is natural")
            })
            .collect();
        Ok(RepMor::new_unchecked(src, tgt, comps))
    }
}

// ----- axiom verification -------------------------------------------------

#[derive(Clone, Debug)]
pub struct AxiomConfig {
    pub samples: usize,
    pub max_dim: usize,
    pub seed: u64,
}

impl Default for AxiomConfig {
    fn default() -> AxiomConfig {
        AxiomConfig {
            samples: 25,
            max_dim: 3,
            seed: 42,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    pub objects_sampled: usize,
    pub morphisms_sampled: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Accumulates pass/fail per named check, keeping the first failure detail.
struct CheckAcc {
    name: &'static str,
    failures: usize,
    total: usize,
    first_failure: Option<String>,
}

impl CheckAcc {
    fn new(name: &'static str) -> CheckAcc {
        CheckAcc {
            name,
            failures: 0,
            total: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, passed: bool, detail: impl Fn() -> String) {
        self.total += 1;
        if !passed {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    fn finish(self) -> AxiomCheck {
        let passed = self.failures == 0;
        let detail = match self.first_failure {
            Some(f) => format!("{}/{} samples failed; first: {f}", self.failures, self.total),
            None => format!("{} samples", self.total),
        };
        AxiomCheck {
            name: self.name,
            passed,
            detail,
        }
    }
}

fn mors_equal(a: &RepMor, b: &RepMor) -> bool {
    a.source() == b.source() && a.target() == b.target() && a.comps() == b.comps()
}

fn is_identity_mor(f: &RepMor) -> bool {
    f.source() == f.target()
        && f.comps()
            .iter()
            .map(|c| c.clone())
            .zip(f.source().dims().iter())
            .all(|(c, &d)| c == FpMat::identity(f.source().p(), d))
}

/// Vertexwise: the column span of the image of `f` equals the kernel of
/// `g`, for composable f, g.
fn image_matches_kernel(f: &RepMor, g: &RepMor) -> bool {
    (0..f.target().dims().len()).all(|v| {
        let img = f.comp(v).image_basis().column_canon();
        let ker = g.comp(v).kernel_basis().column_canon();
        img == ker
    })
}

impl Recollement {
    /// Runs the full axiom suite on deterministic random samples drawn for
    /// this recollement.
    pub fn verify_axioms(&self, cfg: &AxiomConfig) -> Result<AxiomReport, Error> {
        let mut smp = Sampler::new(cfg.seed);
        let report = self.exactness();
        let p = self.p;
        let amb = self.ambient_quiver().clone();
        let iq = self.i_quiver().clone();
        let jq = self.j_quiver().clone();
        let mut objects = 0usize;
        let mut morphisms = 0usize;

        let mut adj_iu = CheckAcc::new("adjunction-dim-i-upper");
        let mut adj_is = CheckAcc::new("adjunction-dim-i-shriek");
        let mut adj_js = CheckAcc::new("adjunction-dim-j-shriek");
        let mut adj_jl = CheckAcc::new("adjunction-dim-j-star");
        let mut ff_i = CheckAcc::new("fully-faithful-i-lower");
        let mut ff_js = CheckAcc::new("fully-faithful-j-shriek");
        let mut ff_jl = CheckAcc::new("fully-faithful-j-star");
        let mut iso_iu = CheckAcc::new("corner-composite-i-upper");
        let mut iso_is = CheckAcc::new("corner-composite-i-shriek");
        let mut iso_js = CheckAcc::new("corner-composite-j-shriek");
        let mut iso_jl = CheckAcc::new("corner-composite-j-star");
        let mut kernel_im = CheckAcc::new("kernel-of-restriction-is-i-side-image");
        let mut seq_a = CheckAcc::new("four-term-sequence-quotient-side");
        let mut seq_b = CheckAcc::new("four-term-sequence-sub-side");
        let mut triangles = CheckAcc::new("triangle-identities");
        let mut exactness = CheckAcc::new("exact-functors-preserve-short-exact");
        let mut functorial = CheckAcc::new("functor-composition");
        let mut vanishing = CheckAcc::new("corner-composites-vanish");

        for _ in 0..cfg.samples {
            let m = smp.rep(&amb, p, cfg.max_dim);
            let x = smp.rep(&iq, p, cfg.max_dim);
            let x2 = smp.rep(&iq, p, cfg.max_dim);
            let y = smp.rep(&jq, p, cfg.max_dim);
            let y2 = smp.rep(&jq, p, cfg.max_dim);
            objects += 5;

            // Adjunction dimension identities.
            let iu_m = self.apply(Functor::IUpperStar, &m)?;
            let is_m = self.apply(Functor::IShriek, &m)?;
            let ju_m = self.apply(Functor::JUpperStar, &m)?;
            let il_x = self.apply(Functor::ILowerStar, &x)?;
            let il_x2 = self.apply(Functor::ILowerStar, &x2)?;
            let js_y = self.apply(Functor::JLowerShriek, &y)?;
            let js_y2 = self.apply(Functor::JLowerShriek, &y2)?;
            let jl_y = self.apply(Functor::JLowerStar, &y)?;
            let jl_y2 = self.apply(Functor::JLowerStar, &y2)?;
            adj_iu.record(hom_dim(&iu_m, &x) == hom_dim(&m, &il_x), || {
                format!(
                    "dim Hom(i^*M, X) = {}, dim Hom(M, i_*X) = {}",
                    hom_dim(&iu_m, &x),
                    hom_dim(&m, &il_x)
                )
            });
            adj_is.record(hom_dim(&il_x, &m) == hom_dim(&x, &is_m), || {
                format!(
                    "dim Hom(i_*X, M) = {}, dim Hom(X, i^!M) = {}",
                    hom_dim(&il_x, &m),
                    hom_dim(&x, &is_m)
                )
            });
            adj_js.record(hom_dim(&js_y, &m) == hom_dim(&y, &ju_m), || {
                format!(
                    "dim Hom(j_!Y, M) = {}, dim Hom(Y, j^*M) = {}",
                    hom_dim(&js_y, &m),
                    hom_dim(&y, &ju_m)
                )
            });
            adj_jl.record(hom_dim(&ju_m, &y) == hom_dim(&m, &jl_y), || {
                format!(
                    "dim Hom(j^*M, Y) = {}, dim Hom(M, j_*Y) = {}",
                    hom_dim(&ju_m, &y),
                    hom_dim(&m, &jl_y)
                )
            });

            // Full faithfulness of the three embeddings.
            ff_i.record(hom_dim(&x, &x2) == hom_dim(&il_x, &il_x2), || {
                "dim Hom changed under i_*".to_string()
            });
            ff_js.record(hom_dim(&y, &y2) == hom_dim(&js_y, &js_y2), || {
                "dim Hom changed under j_!".to_string()
            });
            ff_jl.record(hom_dim(&y, &y2) == hom_dim(&jl_y, &jl_y2), || {
                "dim Hom changed under j_*".to_string()
            });

            // Corner composites are the identity up to isomorphism.
            let round_iu = self.apply(Functor::IUpperStar, &il_x)?;
            let round_is = self.apply(Functor::IShriek, &il_x)?;
            let round_js = self.apply(Functor::JUpperStar, &js_y)?;
            let round_jl = self.apply(Functor::JUpperStar, &jl_y)?;
            iso_iu.record(round_iu == x || is_isomorphic(&round_iu, &x, cfg.seed)?, || {
                "i^* i_* X differs from X".to_string()
            });
            iso_is.record(round_is == x || is_isomorphic(&round_is, &x, cfg.seed)?, || {
                "i^! i_* X differs from X".to_string()
            });
            iso_js.record(round_js == y || is_isomorphic(&round_js, &y, cfg.seed)?, || {
                "j^* j_! Y differs from Y".to_string()
            });
            iso_jl.record(round_jl == y || is_isomorphic(&round_jl, &y, cfg.seed)?, || {
                "j^* j_* Y differs from Y".to_string()
            });

            // Kernel of restriction = image of extension by zero: j^*M = 0
            // iff M is isomorphic to i_* i^! M (support characterization).
            let restricted_zero = ju_m.is_zero();
            let back = self.apply(Functor::ILowerStar, &is_m)?;
            let supported = back == m || is_isomorphic(&back, &m, cfg.seed)?;
            kernel_im.record(restricted_zero == supported, || {
                format!(
                    "j^*M zero: {restricted_zero}, M recovered from its i-side part: {supported}"
                )
            });

            // Four-term sequence 0 -> M' -> j_! j^* M -> M -> i_* i^* M -> 0.
            let eps = self.counit_j_shriek(&m)?;
            let eta = self.unit_i_upper(&m)?;
            let (ker_rep, _) = eps.kernel();
            let ker_supported = self
                .split
                .j_vertices()
                .iter()
                .all(|&v| ker_rep.dim(v) == 0);
            seq_a.record(
                eta.is_epi() && image_matches_kernel(&eps, &eta) && ker_supported,
                || "counit/unit sequence through j_! j^* failed exactness".to_string(),
            );

            // Four-term sequence 0 -> i_* i^! M -> M -> j_* j^* M -> N' -> 0.
            let eps2 = self.counit_i_shriek(&m)?;
            let eta2 = self.unit_j_star(&m)?;
            let (cok_rep, _) = eta2.cokernel();
            let cok_supported = self
                .split
                .j_vertices()
                .iter()
                .all(|&v| cok_rep.dim(v) == 0);
            seq_b.record(
                eps2.is_mono() && image_matches_kernel(&eps2, &eta2) && cok_supported,
                || "counit/unit sequence through j_* j^* failed exactness".to_string(),
            );

            // Triangle identities: the units/counits at objects already in
            // the corner images are literal identities.
            let t1 = is_identity_mor(&self.unit_i_upper(&il_x)?);
            let t2 = is_identity_mor(&self.counit_i_shriek(&il_x)?);
            let t3 = is_identity_mor(&self.counit_j_shriek(&js_y)?);
            let t4 = is_identity_mor(&self.unit_j_star(&jl_y)?);
            triangles.record(t1 && t2 && t3 && t4, || {
                format!("identities held: i-unit {t1}, i-counit {t2}, j-counit {t3}, j-unit {t4}")
            });

            // Vanishing composites across the diagram. A failure to even
            // build the canonical map j_! -> j_* counts as a failed check,
            // not an abort: the broken mutant must be reported, not crash.
            let v1 = self.apply(Functor::IUpperStar, &js_y)?.is_zero();
            let v2 = self.apply(Functor::IShriek, &jl_y)?.is_zero();
            let (v3, v4, v5) = match self.intermediate_extension(&y) {
                Ok(mid) => {
                    let v3 = self.apply(Functor::IUpperStar, &mid)?.is_zero();
                    let v4 = self.apply(Functor::IShriek, &mid)?.is_zero();
                    let back_mid = self.apply(Functor::JUpperStar, &mid)?;
                    let v5 = back_mid == y || is_isomorphic(&back_mid, &y, cfg.seed)?;
                    (v3, v4, v5)
                }
                Err(_) => (false, false, false),
            };
            vanishing.record(v1 && v2 && v3 && v4 && v5, || {
                format!(
                    "i^*j_! zero: {v1}, i^!j_* zero: {v2}, i^* of intermediate zero: {v3}, i^! of intermediate zero: {v4}, restriction recovers input: {v5}"
                )
            });

            // Exactness of everything the report marks exact.
            let amb_ses = smp.short_exact(&amb, p, cfg.max_dim);
            let i_ses = smp.short_exact(&iq, p, cfg.max_dim);
            let j_ses = smp.short_exact(&jq, p, cfg.max_dim);
            objects += 9;
            morphisms += 6;
            let mut exact_ok = true;
            let mut exact_detail = String::new();
            for f in Functor::ALL {
                if !report.is_exact(f) {
                    continue;
                }
                let ses = match f.domain() {
                    Side::Ambient => &amb_ses,
                    Side::ISide => &i_ses,
                    Side::JSide => &j_ses,
                };
                let fi = self.apply_mor(f, ses.sub_mor())?;
                let fp = self.apply_mor(f, ses.quot_mor())?;
                if ShortExact::new(fi, fp).is_err() {
                    exact_ok = false;
                    exact_detail = format!("{} broke a short exact sequence", f.label());
                    break;
                }
            }
            exactness.record(exact_ok, || exact_detail.clone());

            // Functoriality on composable random morphisms.
            let m2 = smp.rep(&amb, p, cfg.max_dim);
            let m3 = smp.rep(&amb, p, cfg.max_dim);
            let phi = smp.morphism(&m, &m2);
            let psi = smp.morphism(&m2, &m3);
            let xphi = smp.morphism(&x, &x2);
            let yphi = smp.morphism(&y, &y2);
            objects += 2;
            morphisms += 4;
            let mut fun_ok = true;
            let mut fun_detail = String::new();
            for f in [Functor::IUpperStar, Functor::IShriek, Functor::JUpperStar] {
                let lhs = self.apply_mor(f, &phi.then(&psi))?;
                let rhs = self.apply_mor(f, &phi)?.then(&self.apply_mor(f, &psi)?);
                if !mors_equal(&lhs, &rhs) {
                    fun_ok = false;
                    fun_detail = format!("{} is not functorial on a composite", f.label());
                    break;
                }
            }
            for (f, arg) in [
                (Functor::ILowerStar, &xphi),
                (Functor::JLowerShriek, &yphi),
                (Functor::JLowerStar, &yphi),
            ] {
                let img = self.apply_mor(f, arg)?;
                let idsrc = self.apply_mor(f, &RepMor::identity(arg.source()))?;
                if !is_identity_mor(&idsrc) {
                    fun_ok = false;
                    fun_detail = format!("{} does not preserve identities", f.label());
                    break;
                }
                // The embedding preserves zero morphisms too.
                if arg.is_zero() != img.is_zero() && hom_dim(arg.source(), arg.target()) > 0 {
                    fun_ok = false;
                    fun_detail = format!("{} changed a morphism's vanishing", f.label());
                    break;
                }
            }
            functorial.record(fun_ok, || fun_detail.clone());
        }

        let checks = alloc::vec![
            adj_iu.finish(),
            adj_is.finish(),
            adj_js.finish(),
            adj_jl.finish(),
            ff_i.finish(),
            ff_js.finish(),
            ff_jl.finish(),
            iso_iu.finish(),
            iso_is.finish(),
            iso_js.finish(),
            iso_jl.finish(),
            kernel_im.finish(),
            seq_a.finish(),
            seq_b.finish(),
            triangles.finish(),
            exactness.finish(),
            functorial.finish(),
            vanishing.finish(),
        ];
        Ok(AxiomReport {
            checks,
            objects_sampled: objects,
            morphisms_sampled: morphisms,
        })
    }
}
