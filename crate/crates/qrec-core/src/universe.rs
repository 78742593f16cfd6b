//! The universe of indecomposables up to a dimension bound.
//!
//! Starting from the simples, the generator closes under middle terms of
//! pairwise extensions, decomposing every middle term and keeping one
//! representative per isomorphism class. For a representation-finite quiver
//! (any orientation of type A, in particular) this reaches every
//! indecomposable once the bound covers their dimensions; extension pairs
//! whose total dimension exceeds the bound are skipped and flagged, so a
//! too-small bound yields a partial universe with `complete() == false`
//! rather than a silent wrong answer.
//!
//! Objects are sorted canonically (total dimension, then the dimension
//! vector lexicographically in declared vertex order, then discovery order)
//! and named: an indecomposable whose support carries dimension one
//! everywhere along a single directed path gets the stacked name
//! "top/...//socle" (e.g. "4/1" for the uniserial with top 4), everything
//! else falls back to its dimension vector.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ext::{ext_dim, ext_middle_terms};
use crate::hom::{decompose, hom_basis, hom_dim, is_isomorphic};
use crate::quiver::Quiver;
use crate::rep::Rep;

/// Result of the closure run: representatives plus a completeness flag.
pub struct Indecomposables {
    pub objects: Vec<Rep>,
    pub complete: bool,
}

/// All indecomposables of total dimension <= dim_bound (for
/// representation-finite inputs), discovered by extension closure from the
/// simples. Deterministic in its inputs.
pub fn all_indecomposables(
    quiver: &Arc<Quiver>,
    p: u32,
    dim_bound: usize,
    seed: u64,
) -> Result<Indecomposables, Error> {
    let mut objects: Vec<Rep> = Vec::new();
    let mut complete = true;
    for v in 0..quiver.vertex_count() {
        if dim_bound >= 1 {
            objects.push(Rep::simple(quiver.clone(), p, v));
        } else {
            complete = false;
        }
    }
    // Process ordered pairs (i, j) breadth-first; new objects enqueue new
    // pairs. Pairs above the bound are skipped but remembered in the flag:
    // with the pair rule, a middle term never exceeds the bound, so no
    // summand is ever silently discarded.
    let mut next_pair = 0usize;
    loop {
        let n = objects.len();
        // Pairs are enumerated in a fixed order: pair index k encodes (i, j)
        // within the square of the current object list, ordered by
        // max(i, j), then i, then j.
        let pairs: Vec<(usize, usize)> = square_order(n);
        if next_pair >= pairs.len() {
            break;
        }
        let (i, j) = pairs[next_pair];
        next_pair += 1;
        let (x, y) = (&objects[i], &objects[j]);
        if x.total_dim() + y.total_dim() > dim_bound {
            complete = false;
            continue;
        }
        let middles = ext_middle_terms(x, y, seed)?;
        let mut found: Vec<Rep> = Vec::new();
        for e in &middles {
            for (summand, _) in decompose(e, seed)? {
                let mut known = false;
                for obj in objects.iter().chain(found.iter()) {
                    if is_isomorphic(&summand, obj, seed)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    found.push(summand);
                }
            }
        }
        objects.extend(found);
    }
    Ok(Indecomposables { objects, complete })
}

/// Ordered pairs (i, j) over 0..n, sorted by (max(i, j), i, j); a prefix of
/// this list for smaller n is a prefix for larger n, so the worklist can
/// resume after the object list grows.
fn square_order(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n);
    for m in 0..n {
        for i in 0..m {
            pairs.push((i, m));
        }
        for j in 0..=m {
            pairs.push((m, j));
        }
    }
    pairs
}

/// The universe: canonical objects, names, and Hom/Ext dimension tables.
pub struct Universe {
    quiver: Arc<Quiver>,
    p: u32,
    dim_bound: usize,
    seed: u64,
    objects: Vec<Rep>,
    names: Vec<String>,
    complete: bool,
    hom_dims: Vec<Vec<usize>>,
    ext_dims: Vec<Vec<usize>>,
}

impl Universe {
    pub fn new(quiver: Arc<Quiver>, p: u32, dim_bound: usize, seed: u64) -> Result<Universe, Error> {
        crate::fp::validate_prime(p)?;
        let Indecomposables {
            mut objects,
            complete,
        } = all_indecomposables(&quiver, p, dim_bound, seed)?;
        // Canonical order; discovery order breaks remaining ties (sort is
        // stable).
        objects.sort_by(|a, b| {
            (a.total_dim(), a.dims()).cmp(&(b.total_dim(), b.dims()))
        });
        let names = assign_names(&quiver, &objects);
        let n = objects.len();
        let mut hom_dims = Vec::with_capacity(n);
        let mut ext_dims = Vec::with_capacity(n);
        for i in 0..n {
            let mut hrow = Vec::with_capacity(n);
            let mut erow = Vec::with_capacity(n);
            for j in 0..n {
                hrow.push(hom_dim(&objects[i], &objects[j]));
                erow.push(ext_dim(&objects[i], &objects[j]));
            }
            hom_dims.push(hrow);
            ext_dims.push(erow);
        }
        Ok(Universe {
            quiver,
            p,
            dim_bound,
            seed,
            objects,
            names,
            complete,
            hom_dims,
            ext_dims,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn object(&self, i: usize) -> &Rep {
        &self.objects[i]
    }

    pub fn objects(&self) -> &[Rep] {
        &self.objects
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom_dims[i][j]
    }

    pub fn ext_dim(&self, i: usize, j: usize) -> usize {
        self.ext_dims[i][j]
    }

    /// A cached-free Hom basis (bases are cheap at universe scale; heavy
    /// callers hold their own caches).
    pub fn hom_basis(&self, i: usize, j: usize) -> Vec<crate::rep::RepMor> {
        hom_basis(&self.objects[i], &self.objects[j])
    }

    /// Index of the universe object isomorphic to `rep`, if any. The
    /// dimension-vector prefilter keeps this cheap.
    pub fn match_object(&self, rep: &Rep) -> Result<Option<usize>, Error> {
        for (i, obj) in self.objects.iter().enumerate() {
            if obj.dims() == rep.dims() && is_isomorphic(rep, obj, self.seed)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Like `match_object` but an unmatched representation is an error
    /// carrying a printable description.
    pub fn match_object_required(&self, rep: &Rep) -> Result<usize, Error> {
        match self.match_object(rep)? {
            Some(i) => Ok(i),
            None => Err(Error::UniverseIncomplete {
                object: format!("indecomposable with dimension vector {:?}", rep.dims()),
            }),
        }
    }
}

/// Stacked interval names where they exist, dimension-vector fallbacks
/// elsewhere, deduplicated by a numeric suffix.
fn assign_names(quiver: &Quiver, objects: &[Rep]) -> Vec<String> {
    let mut names: Vec<String> = Vec::with_capacity(objects.len());
    for obj in objects {
        let base = interval_name(quiver, obj).unwrap_or_else(|| {
            let dims: Vec<String> = obj.dims().iter().map(|d| d.to_string()).collect();
            format!("d({})", dims.join(","))
        });
        let mut name = base.clone();
        let mut k = 2;
        while names.contains(&name) {
            name = format!("{base}#{k}");
            k += 1;
        }
        names.push(name);
    }
    names
}

/// The stacked name of an interval representation: support dimensions all
/// one, the nonzero arrow maps forming a single directed path through the
/// whole support. The name runs from the path's source (the top) to its
/// sink (the socle).
fn interval_name(quiver: &Quiver, rep: &Rep) -> Option<String> {
    let support: Vec<usize> = (0..quiver.vertex_count())
        .filter(|&v| rep.dim(v) > 0)
        .collect();
    if support.is_empty() {
        return None;
    }
    if support.iter().any(|&v| rep.dim(v) != 1) {
        return None;
    }
    // Arrows inside the support with nonzero maps must form a simple path.
    let active: Vec<usize> = (0..quiver.arrow_count())
        .filter(|&ai| {
            let a = quiver.arrow(ai);
            rep.dim(a.source) == 1 && rep.dim(a.target) == 1 && !rep.map(ai).is_zero()
        })
        .collect();
    if active.len() + 1 != support.len() {
        return None;
    }
    let mut out_deg = alloc::collections::BTreeMap::new();
    let mut in_deg = alloc::collections::BTreeMap::new();
    for &v in &support {
        out_deg.insert(v, 0usize);
        in_deg.insert(v, 0usize);
    }
    for &ai in &active {
        let a = quiver.arrow(ai);
        *out_deg.get_mut(&a.source).unwrap() += 1;
        *in_deg.get_mut(&a.target).unwrap() += 1;
    }
    if out_deg.values().any(|&d| d > 1) || in_deg.values().any(|&d| d > 1) {
        return None;
    }
    let starts: Vec<usize> = support
        .iter()
        .copied()
        .filter(|v| in_deg[v] == 0)
        .collect();
    if starts.len() != 1 {
        return None;
    }
    // Walk the path.
    let mut labels = Vec::with_capacity(support.len());
    let mut at = starts[0];
    labels.push(quiver.vertex_label(at).to_string());
    loop {
        let next = active.iter().find(|&&ai| quiver.arrow(ai).source == at);
        match next {
            Some(&ai) => {
                at = quiver.arrow(ai).target;
                labels.push(quiver.vertex_label(at).to_string());
            }
            None => break,
        }
    }
    if labels.len() != support.len() {
        return None;
    }
    Some(labels.join("/"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_support::{chain_41, chain_4123};

    #[test]
    fn two_chain_universe_has_three_interval_modules() {
        let u = Universe::new(chain_41(), 2, 30, 7).unwrap();
        assert!(u.complete());
        assert_eq!(u.names(), &["1".to_string(), "4".to_string(), "4/1".to_string()]);
    }

    #[test]
    fn four_chain_universe_lists_the_ten_intervals() {
        let u = Universe::new(chain_4123(), 2, 30, 7).unwrap();
        assert!(u.complete());
        let names: Vec<&str> = u.names().iter().map(|s| s.as_str()).collect();
        assert_eq!(
            names,
            vec!["3", "2", "1", "4", "2/3", "1/2", "4/1", "1/2/3", "4/1/2", "4/1/2/3"]
        );
    }

    #[test]
    fn hom_and_ext_tables_match_the_euler_pairing() {
        let u = Universe::new(chain_4123(), 2, 30, 7).unwrap();
        let q = u.quiver().clone();
        for i in 0..u.len() {
            for j in 0..u.len() {
                let euler = crate::ext::euler_pairing(&q, u.object(i).dims(), u.object(j).dims());
                assert_eq!(
                    u.hom_dim(i, j) as i64 - u.ext_dim(i, j) as i64,
                    euler,
                    "pair ({}, {})",
                    u.name(i),
                    u.name(j)
                );
            }
        }
    }

    #[test]
    fn tight_bound_reports_incomplete() {
        let u = Universe::new(chain_4123(), 2, 1, 7).unwrap();
        assert!(!u.complete());
        assert_eq!(u.len(), 4); // only the simples fit
    }

    #[test]
    fn match_object_up_to_isomorphism() {
        let u = Universe::new(chain_41(), 2, 30, 7).unwrap();
        // A non-canonical presentation of 4/1 over F_3: map = 2, iso to id.
        let u3 = Universe::new(chain_41(), 3, 30, 7).unwrap();
        let twisted = Rep::new(
            chain_41(),
            3,
            alloc::vec![1, 1],
            alloc::vec![crate::fp::FpMat::from_rows(3, &[&[2]])],
        )
        .unwrap();
        assert_eq!(u3.match_object(&twisted).unwrap(), u3.index_of_name("4/1"));
        // Mismatched: a dimension vector outside the universe.
        let big = Rep::new(
            chain_41(),
            2,
            alloc::vec![2, 0],
            alloc::vec![crate::fp::FpMat::zero(2, 0, 2)],
        )
        .unwrap();
        assert!(u.match_object(&big).unwrap().is_none());
    }
}
