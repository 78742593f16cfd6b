//! Randomized invariants, from the matrix kernel up to the recollement
//! axioms on sampled quivers.

use proptest::prelude::*;

use qrec_core::ext::{euler_pairing, ext_dim};
use qrec_core::hom::{decompose, hom_basis, hom_dim, is_isomorphic};
use qrec_core::recollement::{AxiomConfig, Recollement};
use qrec_core::sample::Sampler;
use qrec_core::{Error, FpMat, Rep, RepMor, ShortExact};

fn arb_prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2), Just(3), Just(5), Just(7), Just(13)]
}

fn mat_with(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = FpMat> {
    proptest::collection::vec(0u32..p, rows * cols).prop_map(move |entries| {
        let mut m = FpMat::zero(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, entries[r * cols + c]);
            }
        }
        m
    })
}

fn arb_mat() -> impl Strategy<Value = FpMat> {
    (arb_prime(), 0usize..=4, 0usize..=4).prop_flat_map(|(p, r, c)| mat_with(p, r, c))
}

/// Two column families inside the same ambient space.
fn arb_subspace_pair() -> impl Strategy<Value = (FpMat, FpMat)> {
    (arb_prime(), 0usize..=4, 0usize..=4, 0usize..=4)
        .prop_flat_map(|(p, r, c1, c2)| (mat_with(p, r, c1), mat_with(p, r, c2)))
}

proptest! {
    #[test]
    fn column_canonical_form_is_idempotent(m in arb_mat()) {
        let once = m.column_canon();
        prop_assert_eq!(once.column_canon(), once);
    }

    #[test]
    fn row_reduction_is_idempotent(m in arb_mat()) {
        let once = m.rref().reduced;
        let twice = once.rref().reduced;
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in arb_mat()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.cols(), m.cols());
        prop_assert!(m.mul(&kernel).is_zero());
    }

    #[test]
    fn image_basis_spans_the_columns(m in arb_mat()) {
        let image = m.image_basis();
        prop_assert_eq!(image.cols(), m.rank());
        prop_assert!(image.contains_cols(&m));
    }

    #[test]
    fn transpose_is_an_involution_and_keeps_rank(m in arb_mat()) {
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_recovers_a_known_solution(
        (m, x) in (arb_prime(), 0usize..=4, 0usize..=4, 0usize..=3)
            .prop_flat_map(|(p, r, c, k)| (mat_with(p, r, c), mat_with(p, c, k)))
    ) {
        let rhs = m.mul(&x);
        let solved = m.solve(&rhs).expect("a constructed system is solvable");
        prop_assert_eq!(m.mul(&solved), rhs);
    }

    #[test]
    fn right_inverse_reports_exactly_the_surjections(m in arb_mat()) {
        match m.right_inverse() {
            Some(ri) => prop_assert_eq!(m.mul(&ri), FpMat::identity(m.p(), m.rows())),
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn kronecker_product_is_bilinear(
        (a, b, c) in (arb_prime(), 0usize..=4, 0usize..=4, 0usize..=3, 0usize..=3)
            .prop_flat_map(|(p, r, c, r2, c2)| {
                (mat_with(p, r, c), mat_with(p, r, c), mat_with(p, r2, c2))
            })
    ) {
        let lhs = a.add(&b).kron(&c);
        let rhs = a.kron(&c).add(&b.kron(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kronecker_product_respects_composition(
        (a, c, b, d) in (arb_prime(), 0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3)
            .prop_flat_map(|(p, r1, c1, k1, r2, c2, k2)| {
                (mat_with(p, r1, c1), mat_with(p, c1, k1), mat_with(p, r2, c2), mat_with(p, c2, k2))
            })
    ) {
        let lhs = a.kron(&b).mul(&c.kron(&d));
        let rhs = a.mul(&c).kron(&b.mul(&d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn join_and_meet_satisfy_the_dimension_formula((a, b) in arb_subspace_pair()) {
        let join = a.join(&b);
        let meet = a.meet(&b);
        prop_assert_eq!(join.rank() + meet.rank(), a.rank() + b.rank());
        prop_assert!(join.contains_cols(&a));
        prop_assert!(join.contains_cols(&b));
        prop_assert!(a.contains_cols(&meet));
        prop_assert!(b.contains_cols(&meet));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_bases_consist_of_independent_morphisms(seed in any::<u64>(), p in arb_prime()) {
        let mut s = Sampler::new(seed);
        let q = s.quiver();
        let m = s.rep(&q, p, 3);
        let n = s.rep(&q, p, 3);
        let basis = hom_basis(&m, &n);
        prop_assert_eq!(basis.len(), hom_dim(&m, &n));
        for f in &basis {
            let rebuilt = RepMor::new(m.clone(), n.clone(), f.comps().to_vec());
            prop_assert!(rebuilt.is_ok(), "basis element fails the square checks");
            prop_assert!(!f.is_zero(), "a basis element must be nonzero");
        }
    }

    #[test]
    fn morphisms_factor_through_their_image(seed in any::<u64>(), p in arb_prime()) {
        let mut s = Sampler::new(seed);
        let q = s.quiver();
        let m = s.rep(&q, p, 3);
        let n = s.rep(&q, p, 3);
        let f = s.morphism(&m, &n);
        let (_, mono, epi) = f.image();
        prop_assert!(mono.is_mono());
        prop_assert!(epi.is_epi());
        let recomposed = epi.then(&mono);
        prop_assert_eq!(recomposed.comps(), f.comps());
        let (_, kernel_mono) = f.kernel();
        prop_assert!(ShortExact::new(kernel_mono, epi).is_ok());
    }

    #[test]
    fn sampled_sequences_are_short_exact(seed in any::<u64>(), p in arb_prime()) {
        let mut s = Sampler::new(seed);
        let q = s.quiver();
        let ses = s.short_exact(&q, p, 3);
        prop_assert_eq!(
            ses.sub().total_dim() + ses.quot().total_dim(),
            ses.middle().total_dim()
        );
        prop_assert!(ses.sub_mor().is_mono());
        prop_assert!(ses.quot_mor().is_epi());
    }

    #[test]
    fn euler_pairing_matches_hom_minus_ext(seed in any::<u64>(), p in arb_prime()) {
        let mut s = Sampler::new(seed);
        let q = s.quiver();
        let m = s.rep(&q, p, 2);
        let n = s.rep(&q, p, 2);
        let pairing = euler_pairing(&q, m.dims(), n.dims());
        let expected = hom_dim(&m, &n) as i64 - ext_dim(&m, &n) as i64;
        prop_assert_eq!(pairing, expected);
    }

    #[test]
    fn decomposition_reassembles_the_original(seed in any::<u64>(), p in arb_prime()) {
        let mut s = Sampler::new(seed);
        let q = s.quiver();
        let m = s.rep(&q, p, 2);
        let parts = match decompose(&m, seed) {
            Ok(parts) => parts,
            Err(Error::DecomposeInconclusive { .. }) | Err(Error::IsoTestInconclusive { .. }) => {
                return Ok(());
            }
            Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
        };
        let total: usize = parts.iter().map(|(part, _)| part.total_dim()).sum();
        prop_assert_eq!(total, m.total_dim());
        if m.is_zero() {
            prop_assert!(parts.is_empty());
            return Ok(());
        }
        let refs: Vec<&Rep> = parts.iter().map(|(part, _)| part).collect();
        let (sum, _, _) = Rep::direct_sum(&refs);
        match is_isomorphic(&sum, &m, seed) {
            Ok(iso) => prop_assert!(iso, "reassembled sum is not isomorphic to the original"),
            Err(Error::IsoTestInconclusive { .. }) => {}
            Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn recollement_axioms_hold_on_sampled_splits(seed in any::<u64>(), p in arb_prime()) {
        let mut s = Sampler::new(seed);
        let q = s.quiver();
        let split = s.split(&q);
        let rec = Recollement::new(split, p).expect("sampled splits are valid");
        let cfg = AxiomConfig {
            samples: 6,
            max_dim: 2,
            seed,
        };
        let report = rec.verify_axioms(&cfg).expect("the axiom run completes");
        for check in &report.checks {
            prop_assert!(check.passed, "check {} failed: {}", check.name, check.detail);
        }
    }
}
