//! Finite acyclic quivers.
//!
//! A quiver is a finite directed graph with labelled vertices and named
//! arrows; parallel arrows are allowed, cycles (including loops) are not.
//! Acyclicity gives a topological order, which the representation-theoretic
//! constructions (largest subrepresentation on a vertex subset, right Kan
//! extension along an open inclusion) traverse.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    /// Vertex indices in a topological order (sources before targets),
    /// breaking ties by declaration order.
    topo: Vec<usize>,
}

impl Quiver {
    /// Builds and validates a quiver. Arrows are given as
    /// (name, source label, target label).
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver, Error> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".to_string()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidQuiver("empty vertex label".to_string()));
            }
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label {v}")));
            }
        }
        let index_of = |label: &str| vertices.iter().position(|v| v == label);
        let mut built = Vec::with_capacity(arrows.len());
        for (i, (name, from, to)) in arrows.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidQuiver("empty arrow name".to_string()));
            }
            if arrows[..i].iter().any(|(n, _, _)| n == name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {name}")));
            }
            let source = index_of(from)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {name}: unknown vertex {from}")))?;
            let target = index_of(to)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {name}: unknown vertex {to}")))?;
            built.push(Arrow {
                name: name.clone(),
                source,
                target,
            });
        }
        let topo = topological_order(vertices.len(), &built)?;
        Ok(Quiver {
            vertices,
            arrows: built,
            topo,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Arrow indices with the given source, in declaration order.
    pub fn arrows_from(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == v)
            .collect()
    }

    /// Arrow indices with the given target, in declaration order.
    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].target == v)
            .collect()
    }

    /// Vertex indices in topological order.
    pub fn topo(&self) -> &[usize] {
        &self.topo
    }
}

/// Kahn's algorithm; among the available in-degree-zero vertices the one
/// with the smallest index is taken first, so the order is deterministic.
fn topological_order(n: usize, arrows: &[Arrow]) -> Result<Vec<usize>, Error> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        if a.source == a.target {
            return Err(Error::InvalidQuiver(format!("loop at vertex index {}", a.source)));
        }
        indeg[a.target] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        let next = (0..n).find(|&v| !done[v] && indeg[v] == 0);
        let Some(v) = next else {
            return Err(Error::InvalidQuiver("quiver has a cycle".to_string()));
        };
        done[v] = true;
        order.push(v);
        for a in arrows {
            if a.source == v {
                indeg[a.target] -= 1;
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use alloc::sync::Arc;

    /// The chain 4 -> 1 -> 2 -> 3 used throughout the integration fixtures.
    pub fn chain_4123() -> Arc<Quiver> {
        Arc::new(
            Quiver::new(
                vec!["4".into(), "1".into(), "2".into(), "3".into()],
                vec![
                    ("a".into(), "4".into(), "1".into()),
                    ("b".into(), "1".into(), "2".into()),
                    ("c".into(), "2".into(), "3".into()),
                ],
            )
            .unwrap(),
        )
    }

    /// The two-vertex chain 4 -> 1.
    pub fn chain_41() -> Arc<Quiver> {
        Arc::new(
            Quiver::new(
                vec!["4".into(), "1".into()],
                vec![("a".into(), "4".into(), "1".into())],
            )
            .unwrap(),
        )
    }

    /// The Kronecker quiver: two parallel arrows u -> v.
    pub fn kronecker() -> Arc<Quiver> {
        Arc::new(
            Quiver::new(
                vec!["u".into(), "v".into()],
                vec![
                    ("a".into(), "u".into(), "v".into()),
                    ("b".into(), "u".into(), "v".into()),
                ],
            )
            .unwrap(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_chain_with_topo_order() {
        let q = Quiver::new(
            vec!["4".into(), "1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "4".into(), "1".into()),
                ("b".into(), "1".into(), "2".into()),
                ("c".into(), "2".into(), "3".into()),
            ],
        )
        .unwrap();
        assert_eq!(q.topo(), &[0, 1, 2, 3]);
        assert_eq!(q.arrows_from(1), vec![1]);
        assert_eq!(q.arrows_into(1), vec![0]);
    }

    #[test]
    fn rejects_cycles_loops_duplicates() {
        assert!(matches!(
            Quiver::new(
                vec!["a".into(), "b".into()],
                vec![
                    ("x".into(), "a".into(), "b".into()),
                    ("y".into(), "b".into(), "a".into()),
                ],
            ),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(
            Quiver::new(vec!["a".into()], vec![("x".into(), "a".into(), "a".into())]),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(
            Quiver::new(vec!["a".into(), "a".into()], vec![]),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(
            Quiver::new(
                vec!["a".into(), "b".into()],
                vec![
                    ("x".into(), "a".into(), "b".into()),
                    ("x".into(), "a".into(), "b".into()),
                ],
            ),
            Err(Error::InvalidQuiver(_))
        ));
    }

    #[test]
    fn parallel_arrows_are_legal() {
        let q = Quiver::new(
            vec!["u".into(), "v".into()],
            vec![
                ("a".into(), "u".into(), "v".into()),
                ("b".into(), "u".into(), "v".into()),
            ],
        )
        .unwrap();
        assert_eq!(q.arrow_count(), 2);
        assert_eq!(q.arrows_from(0), vec![0, 1]);
    }
}
