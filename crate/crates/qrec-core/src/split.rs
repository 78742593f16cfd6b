//! Vertex splits: a two-part partition of the vertices with all crossing
//! arrows pointing the same way.
//!
//! The split carries the two induced corner quivers. The part named in the
//! input is the quotient part (the j-side); representations supported on
//! the complementary part (the i-side) form the kernel of restriction.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::quiver::Quiver;

/// Direction of the crossing arrows, which fixes which derived corner
/// functors are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Every crossing arrow ends in the quotient part.
    IntoQuotient,
    /// Every crossing arrow ends in the i-side part.
    IntoISide,
    /// The parts are disconnected from each other.
    NoCrossing,
}

impl Orientation {
    pub fn label(self) -> &'static str {
        match self {
            Orientation::IntoQuotient => "into-quotient",
            Orientation::IntoISide => "into-i-side",
            Orientation::NoCrossing => "no-crossing",
        }
    }
}

/// A validated split of a quiver's vertices into the i-side and the
/// quotient (j-side) part.
#[derive(Clone, Debug)]
pub struct VertexSplit {
    ambient: Quiver,
    orientation: Orientation,
    /// Ambient indices of the i-side vertices, in ambient declaration order.
    i_vertices: Vec<usize>,
    /// Ambient indices of the quotient-part vertices, likewise.
    j_vertices: Vec<usize>,
    /// For each ambient vertex: its index within its part.
    part_index: Vec<usize>,
    /// For each ambient vertex: whether it lies in the quotient part.
    in_j: Vec<bool>,
    i_quiver: Quiver,
    j_quiver: Quiver,
    /// Ambient arrow indices crossing between the parts.
    crossing: Vec<usize>,
    /// Ambient arrow indices internal to each part, in corner-arrow order.
    i_arrows: Vec<usize>,
    j_arrows: Vec<usize>,
}

impl VertexSplit {
    /// Splits off the vertices with the given labels as the quotient part.
    pub fn new(ambient: &Quiver, quotient_labels: &[String]) -> Result<VertexSplit, Error> {
        if quotient_labels.is_empty() {
            return Err(Error::InvalidSplit(
                "the quotient part must contain at least one vertex".to_string(),
            ));
        }
        let n = ambient.vertex_count();
        let mut in_j = alloc::vec![false; n];
        for label in quotient_labels {
            let v = ambient.vertex_index(label).ok_or_else(|| {
                Error::InvalidSplit(format_unknown(label))
            })?;
            if in_j[v] {
                return Err(Error::InvalidSplit(alloc::format!(
                    "vertex {label} listed twice in the quotient part"
                )));
            }
            in_j[v] = true;
        }
        if in_j.iter().all(|&b| b) {
            return Err(Error::InvalidSplit(
                "the i-side part must contain at least one vertex".to_string(),
            ));
        }
        let mut i_vertices = Vec::new();
        let mut j_vertices = Vec::new();
        let mut part_index = alloc::vec![0usize; n];
        for v in 0..n {
            if in_j[v] {
                part_index[v] = j_vertices.len();
                j_vertices.push(v);
            } else {
                part_index[v] = i_vertices.len();
                i_vertices.push(v);
            }
        }
        let mut crossing = Vec::new();
        let mut i_arrows = Vec::new();
        let mut j_arrows = Vec::new();
        let mut into_j = false;
        let mut into_i = false;
        for (k, a) in ambient.arrows().iter().enumerate() {
            match (in_j[a.source], in_j[a.target]) {
                (false, true) => {
                    into_j = true;
                    crossing.push(k);
                }
                (true, false) => {
                    into_i = true;
                    crossing.push(k);
                }
                (false, false) => i_arrows.push(k),
                (true, true) => j_arrows.push(k),
            }
        }
        let orientation = match (into_j, into_i) {
            (true, true) => {
                return Err(Error::InvalidSplit(
                    "crossing arrows run in both directions between the parts".to_string(),
                ))
            }
            (true, false) => Orientation::IntoQuotient,
            (false, true) => Orientation::IntoISide,
            (false, false) => Orientation::NoCrossing,
        };
        let i_quiver = induced_quiver(ambient, &i_vertices)?;
        let j_quiver = induced_quiver(ambient, &j_vertices)?;
        Ok(VertexSplit {
            ambient: ambient.clone(),
            orientation,
            i_vertices,
            j_vertices,
            part_index,
            in_j,
            i_quiver,
            j_quiver,
            crossing,
            i_arrows,
            j_arrows,
        })
    }

    pub fn ambient(&self) -> &Quiver {
        &self.ambient
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The corner quiver of the i-side (representations supported here form
    /// the kernel of restriction).
    pub fn i_quiver(&self) -> &Quiver {
        &self.i_quiver
    }

    /// The corner quiver of the quotient part.
    pub fn j_quiver(&self) -> &Quiver {
        &self.j_quiver
    }

    pub fn is_j_vertex(&self, ambient_vertex: usize) -> bool {
        self.in_j[ambient_vertex]
    }

    pub fn is_i_vertex(&self, ambient_vertex: usize) -> bool {
        !self.in_j[ambient_vertex]
    }

    /// Ambient indices of the i-side vertices, in declaration order.
    pub fn i_vertices(&self) -> &[usize] {
        &self.i_vertices
    }

    pub fn j_vertices(&self) -> &[usize] {
        &self.j_vertices
    }

    /// The index of an ambient vertex within its own part's corner quiver.
    pub fn corner_index(&self, ambient_vertex: usize) -> usize {
        self.part_index[ambient_vertex]
    }

    /// Ambient arrow indices with one endpoint in each part.
    pub fn crossing_arrows(&self) -> &[usize] {
        &self.crossing
    }

    /// Ambient arrow indices internal to the i-side, in the order the
    /// corner quiver declares them.
    pub fn i_arrows(&self) -> &[usize] {
        &self.i_arrows
    }

    pub fn j_arrows(&self) -> &[usize] {
        &self.j_arrows
    }

    /// The corner quiver and vertex list for one part.
    pub fn part(&self, j_side: bool) -> (&Quiver, &[usize], &[usize]) {
        if j_side {
            (&self.j_quiver, &self.j_vertices, &self.j_arrows)
        } else {
            (&self.i_quiver, &self.i_vertices, &self.i_arrows)
        }
    }
}

fn format_unknown(label: &str) -> String {
    alloc::format!("unknown vertex {label} in the quotient part")
}

/// The full subquiver on the given ambient vertices, keeping labels and
/// arrow names.
fn induced_quiver(ambient: &Quiver, vertices: &[usize]) -> Result<Quiver, Error> {
    let labels: Vec<String> = vertices
        .iter()
        .map(|&v| ambient.vertex_label(v).to_string())
        .collect();
    let keep: alloc::collections::BTreeSet<usize> = vertices.iter().copied().collect();
    let arrows: Vec<(String, String, String)> = ambient
        .arrows()
        .iter()
        .filter(|a| keep.contains(&a.source) && keep.contains(&a.target))
        .map(|a| {
            (
                a.name.clone(),
                ambient.vertex_label(a.source).to_string(),
                ambient.vertex_label(a.target).to_string(),
            )
        })
        .collect();
    Quiver::new(labels, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_support::chain_4123;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn tail_split_points_into_the_quotient_part() {
        let q = chain_4123();
        let s = VertexSplit::new(&q, &labels(&["2", "3"])).unwrap();
        assert_eq!(s.orientation(), Orientation::IntoQuotient);
        assert_eq!(s.i_quiver().vertex_labels(), &["4", "1"]);
        assert_eq!(s.j_quiver().vertex_labels(), &["2", "3"]);
        assert_eq!(s.i_quiver().arrow_count(), 1);
        assert_eq!(s.j_quiver().arrow_count(), 1);
        assert_eq!(s.crossing_arrows().len(), 1);
        assert_eq!(q.arrow(s.crossing_arrows()[0]).name, "b");
    }

    #[test]
    fn head_split_points_into_the_i_side() {
        let q = chain_4123();
        let s = VertexSplit::new(&q, &labels(&["4", "1"])).unwrap();
        assert_eq!(s.orientation(), Orientation::IntoISide);
        assert_eq!(s.i_quiver().vertex_labels(), &["2", "3"]);
        assert_eq!(s.j_quiver().vertex_labels(), &["4", "1"]);
    }

    #[test]
    fn disconnected_parts_have_no_crossing() {
        let q = Quiver::new(
            labels(&["a", "b", "c"]),
            alloc::vec![("f".to_string(), "a".to_string(), "b".to_string())],
        )
        .unwrap();
        let s = VertexSplit::new(&q, &labels(&["c"])).unwrap();
        assert_eq!(s.orientation(), Orientation::NoCrossing);
        assert!(s.crossing_arrows().is_empty());
    }

    #[test]
    fn rejects_bad_parts() {
        let q = chain_4123();
        assert!(VertexSplit::new(&q, &labels(&[])).is_err());
        assert!(VertexSplit::new(&q, &labels(&["4", "1", "2", "3"])).is_err());
        assert!(VertexSplit::new(&q, &labels(&["7"])).is_err());
        assert!(VertexSplit::new(&q, &labels(&["2", "2"])).is_err());
        // Parts {4, 2} / {1, 3}: a crosses into the part, b crosses out of
        // it, so the direction is mixed.
        assert!(VertexSplit::new(&q, &labels(&["1", "3"])).is_err());
    }
}
