//! Twins, point-determining digraphs, and homogeneous sets.
//!
//! A vertex `w` distinguishes a pair `u, v` when exactly one of them is an
//! in-neighbor of `w`, or exactly one is an out-neighbor. Two vertices that
//! no third vertex distinguishes are twins, and the arcs between the pair
//! split twins into three kinds: false twins (no arcs), true twins (arcs both
//! ways) and mixed twins (exactly one arc). A digraph with no false twins is
//! point-determining: distinct vertices have distinct closed "views" of the
//! rest of the digraph.
//!
//! Everything here runs on whole adjacency rows, so a twin test costs a few
//! word operations independent of where the pair sits.

use thiserror::Error;

use crate::digraph::{Digraph, GraphError, VertexSet};

/// The verdict for one pair of distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwinClassification {
    /// Some third vertex sees the pair asymmetrically; the smallest such
    /// vertex is the witness.
    NotTwins { witness: usize },
    /// Twins with no arcs between them.
    FalseTwins,
    /// Twins with arcs in both directions.
    TrueTwins,
    /// Twins with an arc in exactly one direction.
    MixedTwins,
}

/// Raised by operations that require a point-determining digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the digraph is not point-determining")]
pub struct NotPointDeterminingError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RemovableVertexError {
    #[error("the digraph is not point-determining")]
    NotPointDetermining,
    #[error("the empty digraph has no vertex to remove")]
    Empty,
    /// Never expected: every nonempty point-determining digraph has a vertex
    /// whose deletion is again point-determining.
    #[error("no deletion is point-determining; this is a bug")]
    NoneFound,
}

/// Which kind of homogeneous set to search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomogeneousKind {
    StrongClique,
    Independent,
}

/// Whether `w` sees `u` and `v` differently: exactly one of the pair is an
/// in-neighbor of `w`, or exactly one is an out-neighbor.
pub fn distinguishes(d: &Digraph, w: usize, u: usize, v: usize) -> Result<bool, GraphError> {
    if w == u || w == v || u == v {
        return Err(GraphError::NotDistinct);
    }
    for x in [w, u, v] {
        if x >= d.order() {
            return Err(GraphError::OutOfRange {
                vertex: x,
                order: d.order(),
            });
        }
    }
    let ins = d.in_row(w);
    let outs = d.out_row(w);
    Ok((ins >> u ^ ins >> v) & 1 == 1 || (outs >> u ^ outs >> v) & 1 == 1)
}

/// Classifies the pair `u, v`. The witness reported for a non-twin pair is
/// the smallest distinguishing vertex.
pub fn twin_type(d: &Digraph, u: usize, v: usize) -> Result<TwinClassification, GraphError> {
    if u == v {
        return Err(GraphError::NotDistinct);
    }
    for x in [u, v] {
        if x >= d.order() {
            return Err(GraphError::OutOfRange {
                vertex: x,
                order: d.order(),
            });
        }
    }
    let pair = 1u64 << u | 1 << v;
    let diff = ((d.out_row(u) ^ d.out_row(v)) | (d.in_row(u) ^ d.in_row(v))) & !pair;
    if diff != 0 {
        return Ok(TwinClassification::NotTwins {
            witness: diff.trailing_zeros() as usize,
        });
    }
    Ok(match (d.arc(u, v), d.arc(v, u)) {
        (true, true) => TwinClassification::TrueTwins,
        (false, false) => TwinClassification::FalseTwins,
        _ => TwinClassification::MixedTwins,
    })
}

/// No pair of false twins anywhere. Vacuously true below order 2.
pub fn is_point_determining(d: &Digraph) -> bool {
    let n = d.order();
    for u in 0..n {
        for v in u + 1..n {
            let pair = 1u64 << u | 1 << v;
            let diff = ((d.out_row(u) ^ d.out_row(v)) | (d.in_row(u) ^ d.in_row(v))) & !pair;
            if diff == 0 && !d.arc(u, v) && !d.arc(v, u) {
                return false;
            }
        }
    }
    true
}

/// The smallest vertex whose deletion leaves a point-determining digraph.
/// Defined for nonempty point-determining digraphs, where such a vertex
/// always exists.
pub fn removable_vertex(d: &Digraph) -> Result<usize, RemovableVertexError> {
    if d.order() == 0 {
        return Err(RemovableVertexError::Empty);
    }
    if !is_point_determining(d) {
        return Err(RemovableVertexError::NotPointDetermining);
    }
    for v in d.vertices() {
        let (rest, _) = d.delete_vertex(v).expect("vertex in range");
        if is_point_determining(&rest) {
            return Ok(v);
        }
    }
    Err(RemovableVertexError::NoneFound)
}

/// Whether no vertex outside `s` distinguishes any pair inside `s`:
/// equivalently, every outside vertex is uniformly adjacent (in each
/// direction) to all of `s`.
pub fn is_homogeneous(d: &Digraph, s: VertexSet) -> Result<bool, GraphError> {
    if let Some(v) = s.iter().find(|&v| v >= d.order()) {
        return Err(GraphError::OutOfRange {
            vertex: v,
            order: d.order(),
        });
    }
    let bits = s.bits();
    for w in d.vertices() {
        if s.contains(w) {
            continue;
        }
        let outs = d.out_row(w) & bits;
        let ins = d.in_row(w) & bits;
        if (outs != 0 && outs != bits) || (ins != 0 && ins != bits) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The largest homogeneous set of the requested kind, with one witness.
/// Among equally large sets the lexicographically least is returned. The
/// scan is exhaustive over subsets, which is fine at the intended orders.
pub fn max_homogeneous(d: &Digraph, kind: HomogeneousKind) -> (usize, VertexSet) {
    let n = d.order();
    // The empty set is homogeneous and of either kind, so it is the baseline.
    let mut best = VertexSet::EMPTY;
    for mask in 1..(1u128 << n) {
        let s = VertexSet::from_bits(mask as u64);
        if s.len() < best.len() || (s.len() == best.len() && best <= s) {
            continue;
        }
        let fits = match kind {
            HomogeneousKind::StrongClique => d.is_strong_clique(s),
            HomogeneousKind::Independent => d.is_independent_set(s),
        }
        .expect("subset of vertices");
        if fits && is_homogeneous(d, s).expect("subset of vertices") {
            best = s;
        }
    }
    (best.len(), best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs).unwrap()
    }

    #[test]
    fn distinguishing_examples() {
        let g = d(3, &[(0, 1)]);
        // 1 is an out-neighbor of 0, 2 is not.
        assert!(distinguishes(&g, 0, 1, 2).unwrap());
        let c = d(3, &[(0, 1), (1, 2), (2, 0)]);
        // 1 is an in-neighbor of 2, 0 is not.
        assert!(distinguishes(&c, 2, 0, 1).unwrap());
        assert_eq!(distinguishes(&g, 1, 1, 2), Err(GraphError::NotDistinct));
        assert_eq!(
            distinguishes(&g, 0, 1, 3),
            Err(GraphError::OutOfRange {
                vertex: 3,
                order: 3
            })
        );
    }

    #[test]
    fn twin_classification_covers_all_four_verdicts() {
        assert_eq!(
            twin_type(&d(2, &[(0, 1), (1, 0)]), 0, 1).unwrap(),
            TwinClassification::TrueTwins
        );
        assert_eq!(
            twin_type(&d(2, &[]), 0, 1).unwrap(),
            TwinClassification::FalseTwins
        );
        assert_eq!(
            twin_type(&d(2, &[(0, 1)]), 0, 1).unwrap(),
            TwinClassification::MixedTwins
        );
        assert_eq!(
            twin_type(&d(3, &[(0, 1)]), 1, 2).unwrap(),
            TwinClassification::NotTwins { witness: 0 }
        );
    }

    #[test]
    fn twin_type_is_symmetric_at_order_3() {
        for mask in 0u64..64 {
            let pairs = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
            let arcs: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = d(3, &arcs);
            for u in 0..3 {
                for v in 0..3 {
                    if u != v {
                        assert_eq!(twin_type(&g, u, v), twin_type(&g, v, u));
                    }
                }
            }
        }
    }

    #[test]
    fn point_determining_examples() {
        assert!(is_point_determining(&Digraph::empty(0).unwrap()));
        assert!(is_point_determining(&Digraph::empty(1).unwrap()));
        assert!(!is_point_determining(&Digraph::empty(2).unwrap()));
        assert!(is_point_determining(&d(2, &[(0, 1)])));
        assert!(is_point_determining(&d(3, &[(0, 1)])));
        assert!(is_point_determining(&d(3, &[(0, 1), (1, 2), (2, 0)])));
    }

    #[test]
    fn no_true_twins_matches_point_determining_complement() {
        // True twins in a digraph are exactly false twins of its complement.
        for mask in 0u64..64 {
            let pairs = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
            let arcs: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = d(3, &arcs);
            let has_true_twins = (0..3).any(|u| {
                (u + 1..3).any(|v| twin_type(&g, u, v) == Ok(TwinClassification::TrueTwins))
            });
            assert_eq!(!has_true_twins, is_point_determining(&g.complement()));
        }
    }

    #[test]
    fn removable_vertex_examples() {
        assert_eq!(removable_vertex(&d(3, &[(0, 1)])), Ok(2));
        assert_eq!(removable_vertex(&d(3, &[(0, 1), (1, 2), (2, 0)])), Ok(0));
        assert_eq!(removable_vertex(&Digraph::empty(1).unwrap()), Ok(0));
        assert_eq!(
            removable_vertex(&Digraph::empty(0).unwrap()),
            Err(RemovableVertexError::Empty)
        );
        assert_eq!(
            removable_vertex(&Digraph::empty(2).unwrap()),
            Err(RemovableVertexError::NotPointDetermining)
        );
    }

    #[test]
    fn homogeneity_examples() {
        let g = d(3, &[(0, 1)]);
        let s12 = VertexSet::from_members(&[1, 2]);
        assert!(!is_homogeneous(&g, s12).unwrap());
        assert!(is_homogeneous(&g, VertexSet::from_members(&[0, 1, 2])).unwrap());
        assert!(is_homogeneous(&g, VertexSet::from_members(&[1])).unwrap());
        assert!(is_homogeneous(&g, VertexSet::EMPTY).unwrap());
        assert_eq!(
            is_homogeneous(&g, VertexSet::from_members(&[4])),
            Err(GraphError::OutOfRange {
                vertex: 4,
                order: 3
            })
        );
    }

    #[test]
    fn max_homogeneous_examples() {
        let digon = d(2, &[(0, 1), (1, 0)]);
        assert_eq!(
            max_homogeneous(&digon, HomogeneousKind::StrongClique),
            (2, VertexSet::from_members(&[0, 1]))
        );
        let cycle = d(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(
            max_homogeneous(&cycle, HomogeneousKind::Independent),
            (1, VertexSet::from_members(&[0]))
        );
        let empty2 = Digraph::empty(2).unwrap();
        assert_eq!(
            max_homogeneous(&empty2, HomogeneousKind::Independent),
            (2, VertexSet::from_members(&[0, 1]))
        );
        let none = Digraph::empty(0).unwrap();
        assert_eq!(
            max_homogeneous(&none, HomogeneousKind::StrongClique),
            (0, VertexSet::EMPTY)
        );
    }
}
