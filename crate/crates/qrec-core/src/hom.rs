//! Hom spaces, isomorphism testing, Krull-Schmidt decomposition, bricks.
//!
//! A morphism between representations is a solution of the homogeneous
//! linear system expressing that every arrow square commutes, so Hom bases
//! come straight out of a kernel computation. Everything that needs to look
//! at *elements* of an F_p-space (isomorphism search, idempotent search,
//! brick tests) enumerates coefficient tuples against a hard threshold and
//! reports an inconclusive error beyond it, never a guess.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::error::Error;
use crate::fp::FpMat;
use crate::rep::{Rep, RepMor};

/// Enumerations of an F_p-space are attempted only when p^dim <= 2^ENUM_LIMIT_LOG2.
pub const ENUM_LIMIT_LOG2: u32 = 20;

/// Number of random trials the isomorphism test spends before giving up
/// when the Hom space is too large to enumerate.
const RANDOM_ISO_TRIALS: usize = 4096;

/// Whether a space of the given dimension over F_p is small enough to
/// enumerate elementwise.
pub fn enumerable(p: u32, dim: usize) -> bool {
    let limit: u128 = 1 << ENUM_LIMIT_LOG2;
    let mut acc: u128 = 1;
    for _ in 0..dim {
        acc = acc.saturating_mul(p as u128);
        if acc > limit {
            return false;
        }
    }
    true
}

/// Iterator over all coefficient tuples in F_p^len, starting at zero and
/// counting little-endian (first position varies fastest).
pub struct CoeffTuples {
    p: u32,
    state: Option<Vec<u32>>,
}

pub fn coeff_tuples(p: u32, len: usize) -> CoeffTuples {
    CoeffTuples {
        p,
        state: Some(vec![0; len]),
    }
}

impl Iterator for CoeffTuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.state.clone()?;
        // Increment for the next round.
        let state = self.state.as_mut().unwrap();
        let mut pos = 0;
        loop {
            if pos == state.len() {
                self.state = None;
                break;
            }
            state[pos] += 1;
            if state[pos] < self.p {
                break;
            }
            state[pos] = 0;
            pos += 1;
        }
        Some(current)
    }
}

/// Offsets of the per-vertex component blocks in the flattened unknown
/// vector of the Hom system.
fn block_offsets(m: &Rep, n: &Rep) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for v in 0..m.dims().len() {
        offs.push(total);
        total += m.dim(v) * n.dim(v);
    }
    (offs, total)
}

/// The coefficient matrix of the system "all arrow squares commute" for
/// morphisms m -> n; its kernel vectors are the morphism components.
fn hom_system(m: &Rep, n: &Rep) -> FpMat {
    assert_eq!(**m.quiver(), **n.quiver(), "Hom across different quivers");
    assert_eq!(m.p(), n.p(), "Hom across different characteristics");
    let p = m.p();
    let q = m.quiver();
    let (offs, unknowns) = block_offsets(m, n);
    let eq_rows: usize = (0..q.arrow_count())
        .map(|ai| {
            let a = q.arrow(ai);
            n.dim(a.target) * m.dim(a.source)
        })
        .sum();
    let mut sys = FpMat::zero(p, eq_rows, unknowns);
    let mut eq_off = 0;
    for ai in 0..q.arrow_count() {
        let a = q.arrow(ai);
        let (i, j) = (a.source, a.target);
        let ma = m.map(ai);
        let na = n.map(ai);
        // Equation (r, c): (f_j . m_a)[r, c] - (n_a . f_i)[r, c] = 0,
        // where f_v has shape n.dim(v) x m.dim(v).
        for r in 0..n.dim(j) {
            for c in 0..m.dim(i) {
                let row = eq_off + r * m.dim(i) + c;
                for s in 0..m.dim(j) {
                    let coeff = ma.get(s, c);
                    if coeff != 0 {
                        let col = offs[j] + r * m.dim(j) + s;
                        let cur = sys.get(row, col);
                        sys.set(row, col, (cur + coeff) % p);
                    }
                }
                for s in 0..n.dim(i) {
                    let coeff = na.get(r, s);
                    if coeff != 0 {
                        let col = offs[i] + s * m.dim(i) + c;
                        let cur = sys.get(row, col);
                        sys.set(row, col, (cur + p - coeff) % p);
                    }
                }
            }
        }
        eq_off += n.dim(j) * m.dim(i);
    }
    sys
}

fn unpack_morphism(m: &Rep, n: &Rep, offs: &[usize], vector: &FpMat, col: usize) -> RepMor {
    let p = m.p();
    let comps: Vec<FpMat> = (0..m.dims().len())
        .map(|v| {
            let mut c = FpMat::zero(p, n.dim(v), m.dim(v));
            for r in 0..n.dim(v) {
                for s in 0..m.dim(v) {
                    c.set(r, s, vector.get(offs[v] + r * m.dim(v) + s, col));
                }
            }
            c
        })
        .collect();
    RepMor::new_unchecked(m.clone(), n.clone(), comps)
}

/// A basis of Hom(m, n), deterministic in the inputs.
pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<RepMor> {
    let (offs, unknowns) = block_offsets(m, n);
    if unknowns == 0 {
        return Vec::new();
    }
    let kernel = hom_system(m, n).kernel_basis();
    (0..kernel.cols())
        .map(|k| unpack_morphism(m, n, &offs, &kernel, k))
        .collect()
}

/// dim Hom(m, n) without materialising the basis morphisms.
pub fn hom_dim(m: &Rep, n: &Rep) -> usize {
    let (_, unknowns) = block_offsets(m, n);
    if unknowns == 0 {
        return 0;
    }
    unknowns - hom_system(m, n).rank()
}

/// The linear combination of basis morphisms with the given coefficients.
pub fn hom_combine(m: &Rep, n: &Rep, basis: &[RepMor], coeffs: &[u32]) -> RepMor {
    assert_eq!(basis.len(), coeffs.len());
    let mut acc = RepMor::zero(m.clone(), n.clone());
    for (b, &c) in basis.iter().zip(coeffs.iter()) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Isomorphism test: dimension-vector prefilter, then exhaustive search of
/// the Hom space when enumerable, then a seeded randomized search. Errors
/// with `IsoTestInconclusive` instead of guessing.
pub fn is_isomorphic(m: &Rep, n: &Rep, seed: u64) -> Result<bool, Error> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.total_dim() == 0 {
        return Ok(true);
    }
    let p = m.p();
    let basis = hom_basis(m, n);
    if basis.is_empty() {
        return Ok(false);
    }
    if enumerable(p, basis.len()) {
        for coeffs in coeff_tuples(p, basis.len()) {
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            if hom_combine(m, n, &basis, &coeffs).is_iso() {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ISO_TRIALS {
        let coeffs: Vec<u32> = (0..basis.len())
            .map(|_| (rng.next_u32() % p) as u32)
            .collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        if hom_combine(m, n, &basis, &coeffs).is_iso() {
            return Ok(true);
        }
    }
    Err(Error::IsoTestInconclusive {
        hom_dim: basis.len(),
    })
}

/// Krull-Schmidt decomposition: indecomposable summands with their
/// inclusions into `n`. Splits along idempotent endomorphisms found by
/// enumerating the End space (threshold-guarded).
pub fn decompose(n: &Rep, seed: u64) -> Result<Vec<(Rep, RepMor)>, Error> {
    if n.total_dim() == 0 {
        return Ok(Vec::new());
    }
    let end = hom_basis(n, n);
    if end.len() == 1 {
        // End is one-dimensional, hence local: indecomposable.
        return Ok(vec![(n.clone(), RepMor::identity(n))]);
    }
    if !enumerable(n.p(), end.len()) {
        return Err(Error::DecomposeInconclusive { end_dim: end.len() });
    }
    let identity = RepMor::identity(n);
    for coeffs in coeff_tuples(n.p(), end.len()) {
        let e = hom_combine(n, n, &end, &coeffs);
        if e.is_zero() || e == identity {
            continue;
        }
        if e.then(&e) != e {
            continue;
        }
        // Nontrivial idempotent: n = image(e) ⊕ kernel(e).
        let (img, img_inc, _) = e.image();
        let (ker, ker_inc) = e.kernel();
        let mut parts = Vec::new();
        for (piece, inc) in [(img, img_inc), (ker, ker_inc)] {
            for (summand, sub_inc) in decompose(&piece, seed)? {
                parts.push((summand, sub_inc.then(&inc)));
            }
        }
        return Ok(parts);
    }
    // No nontrivial idempotent in the whole End space: indecomposable.
    Ok(vec![(n.clone(), RepMor::identity(n))])
}

/// Whether every nonzero endomorphism is invertible (End is a division
/// ring). One-dimensional End is a fast path; otherwise the End space is
/// enumerated under the threshold.
pub fn is_brick(m: &Rep) -> Result<bool, Error> {
    if m.total_dim() == 0 {
        return Ok(false);
    }
    let end = hom_basis(m, m);
    if end.len() == 1 {
        return Ok(true);
    }
    if !enumerable(m.p(), end.len()) {
        return Err(Error::DecomposeInconclusive { end_dim: end.len() });
    }
    for coeffs in coeff_tuples(m.p(), end.len()) {
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        if !hom_combine(m, m, &end, &coeffs).is_iso() {
            return Ok(false);
        }
    }
    Ok(true)
}
