//! Representations of a quiver over F_p and their morphisms.
//!
//! A representation assigns a finite-dimensional F_p-space to every vertex
//! and a linear map to every arrow (covariantly: the arrow a: i -> j carries
//! a matrix of shape dim(j) x dim(i) sending the space at i to the space at
//! j). Morphisms are vertexwise matrices commuting with the arrow maps.
//! The category is abelian; this module provides the exact structure:
//! kernels, images, cokernels (with their canonical factorisations), direct
//! sums, and validated short exact sequences.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::fp::{validate_prime, FpMat};
use crate::quiver::Quiver;

/// Total-dimension cap for user-constructed representations. Internal
/// constructions (functor images, quotients) are mathematically forced and
/// bypass the cap.
pub const MAX_TOTAL_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    quiver: Arc<Quiver>,
    p: u32,
    dims: Vec<usize>,
    /// One matrix per arrow, indexed like `quiver.arrows()`.
    maps: Vec<FpMat>,
}

impl Rep {
    /// Validates shapes, the characteristic, and the total-dimension cap.
    pub fn new(
        quiver: Arc<Quiver>,
        p: u32,
        dims: Vec<usize>,
        maps: Vec<FpMat>,
    ) -> Result<Rep, Error> {
        validate_prime(p)?;
        let total: usize = dims.iter().sum();
        if total > MAX_TOTAL_DIM {
            return Err(Error::InvalidRep(format!(
                "total dimension {total} exceeds the cap {MAX_TOTAL_DIM}"
            )));
        }
        Rep::new_internal(quiver, p, dims, maps)
    }

    /// Same validation minus the total-dimension cap.
    pub(crate) fn new_internal(
        quiver: Arc<Quiver>,
        p: u32,
        dims: Vec<usize>,
        maps: Vec<FpMat>,
    ) -> Result<Rep, Error> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidRep(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::InvalidRep(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrow_count()
            )));
        }
        for (ai, m) in maps.iter().enumerate() {
            let a = quiver.arrow(ai);
            if m.p() != p {
                return Err(Error::InvalidRep(format!(
                    "arrow {} has characteristic {}, expected {p}",
                    a.name,
                    m.p()
                )));
            }
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidRep(format!(
                    "arrow {}: map is {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Rep {
            quiver,
            p,
            dims,
            maps,
        })
    }

    /// The zero representation.
    pub fn zero(quiver: Arc<Quiver>, p: u32) -> Rep {
        let n = quiver.vertex_count();
        let maps = (0..quiver.arrow_count())
            .map(|_| FpMat::zero(p, 0, 0))
            .collect();
        Rep {
            quiver,
            p,
            dims: vec![0; n],
            maps,
        }
    }

    /// The simple representation concentrated at one vertex.
    pub fn simple(quiver: Arc<Quiver>, p: u32, v: usize) -> Rep {
        let n = quiver.vertex_count();
        let mut dims = vec![0; n];
        dims[v] = 1;
        let maps = (0..quiver.arrow_count())
            .map(|ai| {
                let a = quiver.arrow(ai);
                FpMat::zero(p, dims[a.target], dims[a.source])
            })
            .collect();
        Rep {
            quiver,
            p,
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, arrow: usize) -> &FpMat {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Direct sum with the canonical inclusions and projections.
    pub fn direct_sum(summands: &[&Rep]) -> (Rep, Vec<RepMor>, Vec<RepMor>) {
        assert!(!summands.is_empty(), "direct sum of nothing needs a quiver");
        let quiver = summands[0].quiver.clone();
        let p = summands[0].p;
        for s in summands {
            assert_eq!(*s.quiver, *quiver, "direct sum across different quivers");
            assert_eq!(s.p, p, "direct sum across different characteristics");
        }
        let n = quiver.vertex_count();
        let mut dims = vec![0usize; n];
        for s in summands {
            for v in 0..n {
                dims[v] += s.dims[v];
            }
        }
        let maps: Vec<FpMat> = (0..quiver.arrow_count())
            .map(|ai| {
                let a = quiver.arrow(ai);
                let mut m = FpMat::zero(p, dims[a.target], dims[a.source]);
                let mut roff = 0;
                let mut coff = 0;
                for s in summands {
                    let sm = &s.maps[ai];
                    for i in 0..sm.rows() {
                        for j in 0..sm.cols() {
                            m.set(roff + i, coff + j, sm.get(i, j));
                        }
                    }
                    roff += s.dims[a.target];
                    coff += s.dims[a.source];
                }
                m
            })
            .collect();
        let sum = Rep {
            quiver: quiver.clone(),
            p,
            dims,
            maps,
        };
        let mut inclusions = Vec::with_capacity(summands.len());
        let mut projections = Vec::with_capacity(summands.len());
        let mut offsets = vec![0usize; n];
        for s in summands {
            let mut inc = Vec::with_capacity(n);
            let mut prj = Vec::with_capacity(n);
            for v in 0..n {
                let mut ic = FpMat::zero(p, sum.dims[v], s.dims[v]);
                let mut pc = FpMat::zero(p, s.dims[v], sum.dims[v]);
                for k in 0..s.dims[v] {
                    ic.set(offsets[v] + k, k, 1);
                    pc.set(k, offsets[v] + k, 1);
                }
                inc.push(ic);
                prj.push(pc);
            }
            inclusions.push(RepMor::new_unchecked((*s).clone(), sum.clone(), inc));
            projections.push(RepMor::new_unchecked(sum.clone(), (*s).clone(), prj));
            for v in 0..n {
                offsets[v] += s.dims[v];
            }
        }
        (sum, inclusions, projections)
    }

    /// The subrepresentation spanned by the given per-vertex column bases,
    /// with its inclusion. Fails if the spans are not arrow-stable.
    pub fn subrep(&self, bases: &[FpMat]) -> Result<(Rep, RepMor), Error> {
        assert_eq!(bases.len(), self.dims.len());
        let mut dims = Vec::with_capacity(self.dims.len());
        for (v, b) in bases.iter().enumerate() {
            assert_eq!(b.rows(), self.dims[v], "basis ambient dimension mismatch");
            dims.push(b.cols());
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for ai in 0..self.maps.len() {
            let a = self.quiver.arrow(ai);
            let carried = self.maps[ai].mul(&bases[a.source]);
            let induced = bases[a.target].solve(&carried).ok_or_else(|| {
                Error::InvalidRep(format!(
                    "spans are not stable under arrow {}",
                    a.name
                ))
            })?;
            maps.push(induced);
        }
        let sub = Rep {
            quiver: self.quiver.clone(),
            p: self.p,
            dims,
            maps,
        };
        let inc = RepMor::new_unchecked(sub.clone(), self.clone(), bases.to_vec());
        Ok((sub, inc))
    }

    /// The quotient by the subrepresentation spanned by the given per-vertex
    /// column bases, with its projection. Fails if the spans are not
    /// arrow-stable.
    pub fn quotient(&self, bases: &[FpMat]) -> Result<(Rep, RepMor), Error> {
        assert_eq!(bases.len(), self.dims.len());
        let quotient_maps: Vec<FpMat> = bases.iter().map(|b| b.quotient_map()).collect();
        let dims: Vec<usize> = quotient_maps.iter().map(|q| q.rows()).collect();
        let right_inverses: Vec<FpMat> = quotient_maps
            .iter()
            .map(|q| q.right_inverse().expect("quotient maps have full row rank"))
            .collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for ai in 0..self.maps.len() {
            let a = self.quiver.arrow(ai);
            // Induced map: q_target . M_a . section(q_source); well defined
            // exactly when M_a carries the source span into the target span.
            let candidate = quotient_maps[a.target]
                .mul(&self.maps[ai])
                .mul(&right_inverses[a.source]);
            let check = candidate.mul(&quotient_maps[a.source]);
            if check != quotient_maps[a.target].mul(&self.maps[ai]) {
                return Err(Error::InvalidRep(format!(
                    "spans are not stable under arrow {}",
                    a.name
                )));
            }
            maps.push(candidate);
        }
        let quot = Rep {
            quiver: self.quiver.clone(),
            p: self.p,
            dims,
            maps,
        };
        let proj = RepMor::new_unchecked(self.clone(), quot.clone(), quotient_maps);
        Ok((quot, proj))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMor {
    source: Rep,
    target: Rep,
    comps: Vec<FpMat>,
}

impl RepMor {
    /// Validates that every square f_target . M_a = N_a . f_source commutes.
    pub fn new(source: Rep, target: Rep, comps: Vec<FpMat>) -> Result<RepMor, Error> {
        if *source.quiver != *target.quiver {
            return Err(Error::InvalidMorphism("quivers differ".to_string()));
        }
        if source.p != target.p {
            return Err(Error::InvalidMorphism("characteristics differ".to_string()));
        }
        if comps.len() != source.quiver.vertex_count() {
            return Err(Error::InvalidMorphism(format!(
                "{} components for {} vertices",
                comps.len(),
                source.quiver.vertex_count()
            )));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.rows() != target.dims[v] || c.cols() != source.dims[v] {
                return Err(Error::InvalidMorphism(format!(
                    "component at vertex {}: {}x{}, expected {}x{}",
                    source.quiver.vertex_label(v),
                    c.rows(),
                    c.cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        for ai in 0..source.quiver.arrow_count() {
            let a = source.quiver.arrow(ai);
            let lhs = comps[a.target].mul(&source.maps[ai]);
            let rhs = target.maps[ai].mul(&comps[a.source]);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "square at arrow {} does not commute",
                    a.name
                )));
            }
        }
        Ok(RepMor {
            source,
            target,
            comps,
        })
    }

    /// For internally constructed morphisms whose squares commute by
    /// construction; still fully checked in debug builds.
    pub(crate) fn new_unchecked(source: Rep, target: Rep, comps: Vec<FpMat>) -> RepMor {
        #[cfg(debug_assertions)]
        {
            return RepMor::new(source, target, comps).expect("internal morphism is valid");
        }
        #[allow(unreachable_code)]
        RepMor {
            source,
            target,
            comps,
        }
    }

    pub fn zero(source: Rep, target: Rep) -> RepMor {
        let comps = (0..source.quiver.vertex_count())
            .map(|v| FpMat::zero(source.p, target.dims[v], source.dims[v]))
            .collect();
        RepMor::new_unchecked(source, target, comps)
    }

    pub fn identity(rep: &Rep) -> RepMor {
        let comps = (0..rep.quiver.vertex_count())
            .map(|v| FpMat::identity(rep.p, rep.dims[v]))
            .collect();
        RepMor::new_unchecked(rep.clone(), rep.clone(), comps)
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn comp(&self, v: usize) -> &FpMat {
        &self.comps[v]
    }

    pub fn comps(&self) -> &[FpMat] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// The composite self followed by `then` (`then` . self).
    pub fn then(&self, then: &RepMor) -> RepMor {
        assert_eq!(self.target, then.source, "composition mismatch");
        let comps = (0..self.comps.len())
            .map(|v| then.comps[v].mul(&self.comps[v]))
            .collect();
        RepMor::new_unchecked(self.source.clone(), then.target.clone(), comps)
    }

    pub fn add(&self, other: &RepMor) -> RepMor {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let comps = (0..self.comps.len())
            .map(|v| self.comps[v].add(&other.comps[v]))
            .collect();
        RepMor::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, s: u32) -> RepMor {
        let comps = self.comps.iter().map(|c| c.scale(s)).collect();
        RepMor::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn is_mono(&self) -> bool {
        self.comps
            .iter()
            .enumerate()
            .all(|(v, c)| c.rank() == self.source.dims[v])
    }

    pub fn is_epi(&self) -> bool {
        self.comps
            .iter()
            .enumerate()
            .all(|(v, c)| c.rank() == self.target.dims[v])
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.comps.iter().all(|c| c.is_invertible())
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (Rep, RepMor) {
        let bases: Vec<FpMat> = self.comps.iter().map(|c| c.kernel_basis()).collect();
        self.source
            .subrep(&bases)
            .expect("kernels are arrow-stable")
    }

    /// Image as a subrepresentation of the target: (image, mono, epi) with
    /// self = mono . epi.
    pub fn image(&self) -> (Rep, RepMor, RepMor) {
        let bases: Vec<FpMat> = self.comps.iter().map(|c| c.image_basis()).collect();
        let (img, mono) = self
            .target
            .subrep(&bases)
            .expect("images are arrow-stable");
        let epi_comps: Vec<FpMat> = (0..self.comps.len())
            .map(|v| {
                mono.comps[v]
                    .solve(&self.comps[v])
                    .expect("components factor through the image")
            })
            .collect();
        let epi = RepMor::new_unchecked(self.source.clone(), img.clone(), epi_comps);
        (img, mono, epi)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (Rep, RepMor) {
        let bases: Vec<FpMat> = self.comps.iter().map(|c| c.image_basis()).collect();
        self.target
            .quotient(&bases)
            .expect("images are arrow-stable")
    }
}

/// A validated short exact sequence 0 -> A -> B -> C -> 0.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub sub: RepMor,
    pub quot: RepMor,
}

impl ShortExact {
    pub fn new(sub: RepMor, quot: RepMor) -> Result<ShortExact, Error> {
        if sub.target != quot.source {
            return Err(Error::InvalidMorphism(
                "middle terms differ".to_string(),
            ));
        }
        if !sub.is_mono() {
            return Err(Error::InvalidMorphism("first map is not mono".to_string()));
        }
        if !quot.is_epi() {
            return Err(Error::InvalidMorphism("second map is not epi".to_string()));
        }
        if !sub.then(&quot).is_zero() {
            return Err(Error::InvalidMorphism(
                "composite is not zero".to_string(),
            ));
        }
        for v in 0..sub.comps.len() {
            let rank_in = sub.comps[v].rank();
            let dim_mid = sub.target.dims[v];
            let rank_out = quot.comps[v].rank();
            if rank_in + rank_out != dim_mid {
                return Err(Error::InvalidMorphism(format!(
                    "not exact at vertex {}",
                    sub.source.quiver.vertex_label(v)
                )));
            }
        }
        Ok(ShortExact { sub, quot })
    }

    /// The inclusion of the subobject into the middle term.
    pub fn sub_mor(&self) -> &RepMor {
        &self.sub
    }

    /// The projection of the middle term onto the quotient.
    pub fn quot_mor(&self) -> &RepMor {
        &self.quot
    }

    pub fn sub(&self) -> &Rep {
        self.sub.source()
    }

    pub fn middle(&self) -> &Rep {
        self.sub.target()
    }

    pub fn quot(&self) -> &Rep {
        self.quot.target()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_support::{chain_41, kronecker};

    fn proj_41() -> Rep {
        // The uniserial module 4/1 on the chain 4 -> 1: identity arrow map.
        let q = chain_41();
        Rep::new(q, 2, vec![1, 1], vec![FpMat::identity(2, 1)]).unwrap()
    }

    #[test]
    fn validates_shapes_and_squares() {
        let q = chain_41();
        // Wrong shape: the arrow map must be 1x1.
        assert!(matches!(
            Rep::new(q.clone(), 2, vec![1, 1], vec![FpMat::zero(2, 2, 1)]),
            Err(Error::InvalidRep(_))
        ));
        let m = proj_41();
        let s4 = Rep::simple(chain_41(), 2, 0);
        // The projection to the top: nonzero at vertex 4 only.
        let ok = RepMor::new(
            m.clone(),
            s4.clone(),
            vec![FpMat::identity(2, 1), FpMat::zero(2, 0, 1)],
        );
        assert!(ok.is_ok());
        // A morphism 4/1 -> S_1 with identity at vertex 1 breaks the square.
        let s1 = Rep::simple(chain_41(), 2, 1);
        let bad = RepMor::new(
            m,
            s1,
            vec![FpMat::zero(2, 0, 1), FpMat::identity(2, 1)],
        );
        assert!(matches!(bad, Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn kernel_image_cokernel_of_top_projection() {
        let m = proj_41();
        let s4 = Rep::simple(chain_41(), 2, 0);
        let f = RepMor::new(
            m.clone(),
            s4.clone(),
            vec![FpMat::identity(2, 1), FpMat::zero(2, 0, 1)],
        )
        .unwrap();
        let (ker, inc) = f.kernel();
        assert_eq!(ker.dims(), &[0, 1]); // the socle S_1
        assert!(inc.is_mono());
        let (img, mono, epi) = f.image();
        assert_eq!(img.dims(), &[1, 0]);
        assert!(mono.is_mono() && epi.is_epi());
        assert_eq!(epi.then(&mono), f);
        let (cok, _) = f.cokernel();
        assert!(cok.is_zero());
    }

    #[test]
    fn cokernel_of_socle_inclusion_is_the_top() {
        let m = proj_41();
        let s1 = Rep::simple(chain_41(), 2, 1);
        let inc = RepMor::new(
            s1,
            m,
            vec![FpMat::zero(2, 1, 0), FpMat::identity(2, 1)],
        )
        .unwrap();
        let (cok, proj) = inc.cokernel();
        assert_eq!(cok.dims(), &[1, 0]); // S_4
        assert!(proj.is_epi());
        assert!(inc.then(&proj).is_zero());
    }

    #[test]
    fn direct_sum_blocks_and_projections() {
        let m = proj_41();
        let s4 = Rep::simple(chain_41(), 2, 0);
        let (sum, incs, prjs) = Rep::direct_sum(&[&m, &s4]);
        assert_eq!(sum.dims(), &[2, 1]);
        // inclusion then projection is the identity on each summand.
        for k in 0..2 {
            let round = incs[k].then(&prjs[k]);
            assert!(round.is_iso());
        }
        // Mixed composite is zero.
        assert!(incs[0].then(&prjs[1]).is_zero());
        // The arrow map is the block matrix of the summand maps.
        assert_eq!(sum.map(0), &FpMat::from_rows(2, &[&[1, 0]]));
    }

    #[test]
    fn short_exact_sequence_validation() {
        let m = proj_41();
        let s1 = Rep::simple(chain_41(), 2, 1);
        let s4 = Rep::simple(chain_41(), 2, 0);
        let sub = RepMor::new(
            s1.clone(),
            m.clone(),
            vec![FpMat::zero(2, 1, 0), FpMat::identity(2, 1)],
        )
        .unwrap();
        let quot = RepMor::new(
            m.clone(),
            s4.clone(),
            vec![FpMat::identity(2, 1), FpMat::zero(2, 0, 1)],
        )
        .unwrap();
        assert!(ShortExact::new(sub.clone(), quot.clone()).is_ok());
        // Splitting the wrong way round is not exact.
        let wrong = RepMor::new(
            m.clone(),
            s4.clone(),
            vec![FpMat::zero(2, 1, 1), FpMat::zero(2, 0, 1)],
        )
        .unwrap();
        assert!(ShortExact::new(sub, wrong).is_err());
    }

    #[test]
    fn kronecker_reps_with_parallel_arrows() {
        let q = kronecker();
        let r = Rep::new(
            q,
            2,
            vec![1, 1],
            vec![FpMat::identity(2, 1), FpMat::identity(2, 1)],
        )
        .unwrap();
        assert_eq!(r.total_dim(), 2);
    }

    #[test]
    fn dimension_cap_enforced_for_public_constructor() {
        let q = chain_41();
        let r = Rep::new(q, 2, vec![60, 10], vec![FpMat::zero(2, 10, 60)]);
        assert!(matches!(r, Err(Error::InvalidRep(_))));
    }
}
