//! Extension groups with explicit middle terms, and the Euler pairing.
//!
//! For an acyclic quiver the path algebra is hereditary, so Ext^1 is the
//! whole story and admits a concrete model: an extension 0 -> y -> E -> x -> 0
//! is determined by a tuple of "connecting" blocks ε_a: x_i -> y_j (one per
//! arrow a: i -> j), and two tuples give equivalent extensions iff they
//! differ by the image of the difference map δ(f)_a = f_j x_a - y_a f_i over
//! vertexwise maps f_v: x_v -> y_v. dim Ext^1(x, y) is therefore the corank
//! of δ, and enumerating coset representatives of im δ lists every middle
//! term, the split one (ε = 0) first.

use alloc::vec::Vec;

use crate::error::Error;
use crate::fp::FpMat;
use crate::hom::{coeff_tuples, enumerable, is_isomorphic};
use crate::quiver::Quiver;
use crate::rep::Rep;

/// The Euler pairing <d, e> = Σ_v d_v e_v − Σ_{a: i->j} d_i e_j. For
/// representations m, n with these dimension vectors it equals
/// dim Hom(m, n) − dim Ext^1(m, n).
pub fn euler_pairing(q: &Quiver, d: &[usize], e: &[usize]) -> i64 {
    assert_eq!(d.len(), q.vertex_count());
    assert_eq!(e.len(), q.vertex_count());
    let mut acc: i64 = 0;
    for v in 0..q.vertex_count() {
        acc += d[v] as i64 * e[v] as i64;
    }
    for ai in 0..q.arrow_count() {
        let a = q.arrow(ai);
        acc -= d[a.source] as i64 * e[a.target] as i64;
    }
    acc
}

/// Offsets of the per-arrow blocks in the flattened ε-space, plus its total
/// dimension.
fn arrow_block_offsets(x: &Rep, y: &Rep) -> (Vec<usize>, usize) {
    let q = x.quiver();
    let mut offs = Vec::with_capacity(q.arrow_count());
    let mut total = 0;
    for ai in 0..q.arrow_count() {
        let a = q.arrow(ai);
        offs.push(total);
        total += y.dim(a.target) * x.dim(a.source);
    }
    (offs, total)
}

/// The difference map δ: ⊕_v Hom_k(x_v, y_v) -> ⊕_a Hom_k(x_i, y_j),
/// δ(f)_a = f_j . x_a − y_a . f_i, as a matrix.
fn difference_map(x: &Rep, y: &Rep) -> FpMat {
    assert_eq!(**x.quiver(), **y.quiver());
    assert_eq!(x.p(), y.p());
    let p = x.p();
    let q = x.quiver();
    let (eps_offs, eps_total) = arrow_block_offsets(x, y);
    let mut f_offs = Vec::with_capacity(q.vertex_count());
    let mut f_total = 0;
    for v in 0..q.vertex_count() {
        f_offs.push(f_total);
        f_total += y.dim(v) * x.dim(v);
    }
    let mut delta = FpMat::zero(p, eps_total, f_total);
    for ai in 0..q.arrow_count() {
        let a = q.arrow(ai);
        let (i, j) = (a.source, a.target);
        let xa = x.map(ai);
        let ya = y.map(ai);
        // Output entry (r, c) of block a, r < y.dim(j), c < x.dim(i):
        // Σ_s f_j[r, s] xa[s, c] − Σ_s ya[r, s] f_i[s, c].
        for r in 0..y.dim(j) {
            for c in 0..x.dim(i) {
                let row = eps_offs[ai] + r * x.dim(i) + c;
                for s in 0..x.dim(j) {
                    let coeff = xa.get(s, c);
                    if coeff != 0 {
                        let col = f_offs[j] + r * x.dim(j) + s;
                        let cur = delta.get(row, col);
                        delta.set(row, col, (cur + coeff) % p);
                    }
                }
                for s in 0..y.dim(i) {
                    let coeff = ya.get(r, s);
                    if coeff != 0 {
                        let col = f_offs[i] + s * x.dim(i) + c;
                        let cur = delta.get(row, col);
                        delta.set(row, col, (cur + p - coeff) % p);
                    }
                }
            }
        }
    }
    delta
}

/// dim Ext^1(x, y), computed from the difference map (independently of the
/// Euler pairing, which the tests use as an oracle against this value).
pub fn ext_dim(x: &Rep, y: &Rep) -> usize {
    let (_, eps_total) = arrow_block_offsets(x, y);
    if eps_total == 0 {
        return 0;
    }
    eps_total - difference_map(x, y).rank()
}

/// All middle terms E of extensions 0 -> y -> E -> x -> 0, up to
/// isomorphism, the split one first. Enumerates one ε per coset of im δ
/// (threshold-guarded) and deduplicates with the isomorphism test.
pub fn ext_middle_terms(x: &Rep, y: &Rep, seed: u64) -> Result<Vec<Rep>, Error> {
    let p = x.p();
    let q = x.quiver();
    let (eps_offs, eps_total) = arrow_block_offsets(x, y);
    // Coordinates of a complement of im δ: the non-pivot coordinates of the
    // row space of δ^T (echelon rows plus those standard vectors form a
    // basis of the ε-space).
    let complement: Vec<usize> = if eps_total == 0 {
        Vec::new()
    } else {
        let delta = difference_map(x, y);
        let pivots = delta.transpose().rref().pivot_cols;
        (0..eps_total).filter(|c| !pivots.contains(c)).collect()
    };
    if !enumerable(p, complement.len()) {
        return Err(Error::ClosureInconclusive {
            reason: alloc::format!(
                "extension space of dimension {} is too large to enumerate",
                complement.len()
            ),
        });
    }
    let mut terms: Vec<Rep> = Vec::new();
    for coeffs in coeff_tuples(p, complement.len()) {
        let mut eps_vec = alloc::vec![0u32; eps_total];
        for (k, &coord) in complement.iter().enumerate() {
            eps_vec[coord] = coeffs[k];
        }
        let dims: Vec<usize> = (0..q.vertex_count())
            .map(|v| y.dim(v) + x.dim(v))
            .collect();
        let maps: Vec<FpMat> = (0..q.arrow_count())
            .map(|ai| {
                let a = q.arrow(ai);
                let (i, j) = (a.source, a.target);
                let mut eps = FpMat::zero(p, y.dim(j), x.dim(i));
                for r in 0..y.dim(j) {
                    for c in 0..x.dim(i) {
                        eps.set(r, c, eps_vec[eps_offs[ai] + r * x.dim(i) + c]);
                    }
                }
                let zero = FpMat::zero(p, x.dim(j), y.dim(i));
                FpMat::block(p, &[
                    alloc::vec![y.map(ai), &eps],
                    alloc::vec![&zero, x.map(ai)],
                ])
            })
            .collect();
        let e = Rep::new_internal(q.clone(), p, dims, maps).expect("middle term is well formed");
        let mut seen = false;
        for known in &terms {
            if is_isomorphic(&e, known, seed)? {
                seen = true;
                break;
            }
        }
        if !seen {
            terms.push(e);
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::hom_dim;
    use crate::quiver::test_support::chain_41;
    use alloc::vec;

    fn proj_41() -> Rep {
        Rep::new(chain_41(), 2, vec![1, 1], vec![FpMat::identity(2, 1)]).unwrap()
    }

    #[test]
    fn euler_matches_hom_minus_ext_on_simples() {
        let q = chain_41();
        let s4 = Rep::simple(q.clone(), 2, 0);
        let s1 = Rep::simple(q.clone(), 2, 1);
        assert_eq!(euler_pairing(&q, &[1, 0], &[0, 1]), -1);
        assert_eq!(hom_dim(&s4, &s1), 0);
        assert_eq!(ext_dim(&s4, &s1), 1);
        // The other direction carries nothing.
        assert_eq!(euler_pairing(&q, &[0, 1], &[1, 0]), 0);
        assert_eq!(ext_dim(&s1, &s4), 0);
    }

    #[test]
    fn middle_terms_of_the_basic_extension() {
        let q = chain_41();
        let s4 = Rep::simple(q.clone(), 2, 0);
        let s1 = Rep::simple(q.clone(), 2, 1);
        // 0 -> S_1 -> E -> S_4 -> 0: split and the uniserial 4/1.
        let terms = ext_middle_terms(&s4, &s1, 7).unwrap();
        assert_eq!(terms.len(), 2);
        let (split, _, _) = Rep::direct_sum(&[&s1, &s4]);
        assert!(is_isomorphic(&terms[0], &split, 7).unwrap());
        assert!(is_isomorphic(&terms[1], &proj_41(), 7).unwrap());
    }

    #[test]
    fn split_only_when_ext_vanishes() {
        let q = chain_41();
        let s4 = Rep::simple(q.clone(), 2, 0);
        let s1 = Rep::simple(q.clone(), 2, 1);
        let terms = ext_middle_terms(&s1, &s4, 7).unwrap();
        assert_eq!(terms.len(), 1);
        let (split, _, _) = Rep::direct_sum(&[&s4, &s1]);
        assert!(is_isomorphic(&terms[0], &split, 7).unwrap());
    }

    #[test]
    fn euler_oracle_on_the_projective() {
        let q = chain_41();
        let p41 = proj_41();
        let s1 = Rep::simple(q.clone(), 2, 1);
        // <(1,1), (0,1)> = 1 - 1 = 0 and Hom = Ext = 0.
        assert_eq!(euler_pairing(&q, &[1, 1], &[0, 1]), 0);
        assert_eq!(hom_dim(&p41, &s1), 0);
        assert_eq!(ext_dim(&p41, &s1), 0);
        // Extensions of the projective by anything split.
        assert_eq!(ext_middle_terms(&p41, &s1, 7).unwrap().len(), 1);
    }
}
