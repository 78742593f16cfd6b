//! Dense matrices over a prime field F_p with exact row reduction.
//!
//! Everything is integer arithmetic mod p (p prime, p < 2^16), so ranks,
//! kernels and solutions are exact. Vectors are columns: a matrix of shape
//! (rows, cols) represents a linear map F_p^cols -> F_p^rows. Zero-row and
//! zero-column matrices are first-class citizens because graded objects
//! routinely have zero components.
//!
//! The second half of the module works with subspaces of F_p^n, represented
//! by matrices whose columns form a basis. [`FpMat::column_canon`] produces
//! a canonical basis, so two subspace representatives are equal as subspaces
//! iff their canonical forms are equal matrices; this is what the closure
//! engine uses to deduplicate subrepresentations.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Exclusive upper bound for the field characteristic.
pub const MAX_P: u32 = 1 << 16;

/// Trial-division primality test; p is below 2^16 so this is instant.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a characteristic for use in this crate.
pub fn validate_prime(p: u32) -> Result<(), Error> {
    if p >= MAX_P {
        return Err(Error::InvalidRep(format!(
            "characteristic {p} is too large (must be below {MAX_P})"
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidRep(format!("{p} is not prime")));
    }
    Ok(())
}

/// a^e mod p by square-and-multiply.
fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = (a % p) as u64;
    let mut acc = 1u64;
    let p64 = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    acc as u32
}

/// Multiplicative inverse of a nonzero residue, via Fermat.
fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// The result of row reduction: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: FpMat,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FpMat {
    p: u32,
    rows: usize,
    cols: usize,
    /// Row-major entries, each reduced mod p.
    data: Vec<u32>,
}

impl FpMat {
    pub fn zero(p: u32, rows: usize, cols: usize) -> FpMat {
        debug_assert!(is_prime(p) && p < MAX_P);
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> FpMat {
        let mut m = FpMat::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row slices, reducing entries mod p.
    pub fn from_rows(p: u32, rows: &[&[u32]]) -> FpMat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = FpMat::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_field(&self, other: &FpMat) {
        assert_eq!(self.p, other.p, "mixed characteristics");
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        self.same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = (*a + b) % self.p;
        }
        out
    }

    pub fn neg(&self) -> FpMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (self.p - *a) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u32) -> FpMat {
        let s = s % self.p;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (*a as u64 * s as u64 % self.p as u64) as u32;
        }
        out
    }

    /// Matrix product self * other.
    pub fn mul(&self, other: &FpMat) -> FpMat {
        self.same_field(other);
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let p64 = self.p as u64;
        let mut out = FpMat::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.data[i * other.cols + j] as u64;
                    let add = a * other.data[k * other.cols + j] as u64;
                    out.data[i * other.cols + j] = ((cur + add) % p64) as u32;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &FpMat) -> FpMat {
        FpMat::hstack_all(self.p, &[self, other])
    }

    pub fn hstack_all(p: u32, parts: &[&FpMat]) -> FpMat {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = FpMat::zero(p, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "row mismatch in hstack");
            assert_eq!(m.p, p, "mixed characteristics");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.data[i * cols + off + j] = m.data[i * m.cols + j];
                }
            }
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &FpMat) -> FpMat {
        FpMat::vstack_all(self.p, &[self, other])
    }

    pub fn vstack_all(p: u32, parts: &[&FpMat]) -> FpMat {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = FpMat::zero(p, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "column mismatch in vstack");
            assert_eq!(m.p, p, "mixed characteristics");
            for i in 0..m.rows {
                for j in 0..cols {
                    out.data[(off + i) * cols + j] = m.data[i * m.cols + j];
                }
            }
            off += m.rows;
        }
        out
    }

    /// Assembles a matrix from a 2D grid of blocks. Within a grid row all
    /// blocks must agree on rows; within a grid column, on cols.
    pub fn block(p: u32, grid: &[Vec<&FpMat>]) -> FpMat {
        let rows_per_band: Vec<usize> = grid
            .iter()
            .map(|band| band.first().map_or(0, |m| m.rows))
            .collect();
        let cols_per_strip: Vec<usize> = if grid.is_empty() {
            Vec::new()
        } else {
            grid[0].iter().map(|m| m.cols).collect()
        };
        let total_rows: usize = rows_per_band.iter().sum();
        let total_cols: usize = cols_per_strip.iter().sum();
        let mut out = FpMat::zero(p, total_rows, total_cols);
        let mut roff = 0;
        for (bi, band) in grid.iter().enumerate() {
            assert_eq!(band.len(), cols_per_strip.len(), "ragged block grid");
            let mut coff = 0;
            for (si, m) in band.iter().enumerate() {
                assert_eq!(m.rows, rows_per_band[bi], "inconsistent block rows");
                assert_eq!(m.cols, cols_per_strip[si], "inconsistent block cols");
                assert_eq!(m.p, p, "mixed characteristics");
                for i in 0..m.rows {
                    for j in 0..m.cols {
                        out.data[(roff + i) * total_cols + coff + j] = m.data[i * m.cols + j];
                    }
                }
                coff += m.cols;
            }
            roff += rows_per_band[bi];
        }
        out
    }

    /// Kronecker product; (a kron b)[(i1,i2),(j1,j2)] = a[i1,j1] * b[i2,j2].
    pub fn kron(&self, other: &FpMat) -> FpMat {
        self.same_field(other);
        let p64 = self.p as u64;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = FpMat::zero(self.p, rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.data[i1 * self.cols + j1] as u64;
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let v = a * other.data[i2 * other.cols + j2] as u64 % p64;
                        out.data[(i1 * other.rows + i2) * cols + (j1 * other.cols + j2)] =
                            v as u32;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form with pivot columns, by Gauss-Jordan.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let p64 = p as u64;
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            // Find a pivot in column c at or below row r.
            let mut pivot = None;
            for i in r..m.rows {
                if m.data[i * m.cols + c] != 0 {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot else { continue };
            // Swap into place.
            if pi != r {
                for j in 0..m.cols {
                    m.data.swap(pi * m.cols + j, r * m.cols + j);
                }
            }
            // Normalise the pivot row.
            let inv = inv_mod(m.data[r * m.cols + c], p);
            for j in c..m.cols {
                m.data[r * m.cols + j] =
                    (m.data[r * m.cols + j] as u64 * inv as u64 % p64) as u32;
            }
            // Eliminate everywhere else.
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.data[i * m.cols + c] as u64;
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f * m.data[r * m.cols + j] as u64 % p64;
                    let cur = m.data[i * m.cols + j] as u64;
                    m.data[i * m.cols + j] = ((cur + p64 - sub) % p64) as u32;
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref {
            reduced: m,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// A basis of the right null space, as columns. Shape: cols x nullity.
    /// Free variables are taken in ascending column order with the pivot
    /// entries filled in from the reduced form, so the result is canonical.
    pub fn kernel_basis(&self) -> FpMat {
        let Rref {
            reduced,
            pivot_cols,
        } = self.rref();
        let p = self.p;
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = FpMat::zero(p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                let v = reduced.get(ri, fc);
                if v != 0 {
                    out.set(pc, k, p - v);
                }
            }
        }
        out
    }

    /// A basis of the column space: the pivot columns of self, in order.
    pub fn image_basis(&self) -> FpMat {
        let pivots = self.rref().pivot_cols;
        let mut out = FpMat::zero(self.p, self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.get(i, c));
            }
        }
        out
    }

    /// Solves self * X = rhs. Returns None if inconsistent; free variables
    /// are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &FpMat) -> Option<FpMat> {
        self.same_field(rhs);
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve");
        let aug = self.hstack(rhs);
        let Rref {
            reduced,
            pivot_cols,
        } = aug.rref();
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMat::zero(self.p, self.cols, rhs.cols);
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, reduced.get(ri, self.cols + j));
            }
        }
        Some(x)
    }

    /// Right inverse of a matrix with full row rank (solve(self, I)).
    pub fn right_inverse(&self) -> Option<FpMat> {
        self.solve(&FpMat::identity(self.p, self.rows))
    }

    /// Whether the matrix is invertible (square and full rank).
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    // ----- subspace helpers -------------------------------------------------
    //
    // A subspace of F_p^n is carried around as an n x k matrix whose columns
    // span it (not necessarily independent unless stated).

    /// Canonical basis of the column span: transpose, row-reduce, drop zero
    /// rows, transpose back. Two matrices span the same subspace iff their
    /// canonical forms are identical.
    pub fn column_canon(&self) -> FpMat {
        let r = self.transpose().rref();
        let rank = r.rank();
        // Built entry by entry so a rank-zero space keeps its ambient row
        // count (rows x 0 rather than 0 x 0).
        let mut out = FpMat::zero(self.p, self.rows, rank);
        for i in 0..rank {
            for j in 0..self.rows {
                out.data[j * rank + i] = r.reduced.data[i * r.reduced.cols + j];
            }
        }
        out
    }

    /// Canonical basis of col(self) + col(other).
    pub fn join(&self, other: &FpMat) -> FpMat {
        self.hstack(other).column_canon()
    }

    /// Canonical basis of col(self) ∩ col(other).
    pub fn meet(&self, other: &FpMat) -> FpMat {
        // Solutions of self*x = other*y: kernel of [self | -other]; the
        // intersection is self applied to the x-block.
        let aug = self.hstack(&other.neg());
        let ker = aug.kernel_basis();
        let mut xblock = FpMat::zero(self.p, self.cols, ker.cols());
        for i in 0..self.cols {
            for j in 0..ker.cols() {
                xblock.set(i, j, ker.get(i, j));
            }
        }
        self.mul(&xblock).column_canon()
    }

    /// Whether col(other) ⊆ col(self).
    pub fn contains_cols(&self, other: &FpMat) -> bool {
        assert_eq!(self.rows, other.rows, "ambient mismatch");
        self.hstack(other).rank() == self.rank()
    }

    /// A full-row-rank map F_p^n -> F_p^(n-r) whose kernel is exactly
    /// col(self); the cokernel projection of the inclusion of col(self).
    pub fn quotient_map(&self) -> FpMat {
        // Kernel vectors of self^T are exactly the linear functionals
        // vanishing on col(self); stacked as rows they form the projection.
        self.transpose().kernel_basis().transpose()
    }

    /// Canonical basis of map^{-1}(col(w)), where self: F^cols -> F^rows and
    /// w spans a subspace of F^rows.
    pub fn preimage_of(&self, w: &FpMat) -> FpMat {
        let q = w.quotient_map();
        q.mul(self).kernel_basis().column_canon()
    }

    /// Flat byte-free key for use in ordered maps: shape plus entries.
    pub fn key(&self) -> Vec<u32> {
        let mut k = Vec::with_capacity(2 + self.data.len());
        k.push(self.rows as u32);
        k.push(self.cols as u32);
        k.extend_from_slice(&self.data);
        k
    }
}
