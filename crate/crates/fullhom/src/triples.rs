//! Triples: the local witnesses that keep a digraph point-determining.
//!
//! In a point-determining digraph a pair `y, z` can be on the verge of
//! collapsing: delete one vertex `x` and they become false twins. The triple
//! `(x, {y, z})` records that situation; `x` is called red, `y` and `z`
//! green. Equivalently, `x` is the only vertex distinguishing `y` from `z`,
//! and `y`, `z` are nonadjacent. Red vertices are exactly the deletions that
//! can break point-determinism, so a vertex that is red in no triple can be
//! removed safely, and such a vertex always exists.

use crate::digraph::{Digraph, VertexSet};
use crate::twins::{self, NotPointDeterminingError, TwinClassification};

/// A red vertex together with the green pair it holds apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub red: usize,
    /// The green pair, stored ascending.
    pub green: (usize, usize),
}

impl Triple {
    fn new(red: usize, a: usize, b: usize) -> Triple {
        Triple {
            red,
            green: (a.min(b), a.max(b)),
        }
    }

    pub fn greens_contain(&self, v: usize) -> bool {
        self.green.0 == v || self.green.1 == v
    }
}

/// All triples of a point-determining digraph, sorted by red vertex and then
/// by the green pair.
pub fn enumerate_triples(d: &Digraph) -> Result<Vec<Triple>, NotPointDeterminingError> {
    if !twins::is_point_determining(d) {
        return Err(NotPointDeterminingError);
    }
    let n = d.order();
    let mut out = Vec::new();
    for x in 0..n {
        let (rest, map) = d.delete_vertex(x).expect("vertex in range");
        for yy in 0..rest.order() {
            for zz in yy + 1..rest.order() {
                if twins::twin_type(&rest, yy, zz) == Ok(TwinClassification::FalseTwins) {
                    let t = Triple::new(x, map.new_to_old(yy), map.new_to_old(zz));
                    debug_assert_eq!(
                        twins::distinguishes(d, t.red, t.green.0, t.green.1),
                        Ok(true)
                    );
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// The vertices that are red in no triple. Deleting any of them leaves the
/// digraph point-determining, and at least one always exists in a nonempty
/// point-determining digraph.
pub fn red_free_vertices(d: &Digraph) -> Result<VertexSet, NotPointDeterminingError> {
    let triples = enumerate_triples(d)?;
    let mut free = VertexSet::universe(d.order());
    for t in &triples {
        free.remove(t.red);
    }
    Ok(free)
}

/// Pairs of triples that break the intersection rule: the first's greens
/// contain the second's red, yet the second's greens do not contain the
/// first's red as a different vertex. No point-determining digraph has any,
/// which `verify` sweeps confirm exhaustively at small orders.
pub fn triple_intersection_violations(
    d: &Digraph,
) -> Result<Vec<(Triple, Triple)>, NotPointDeterminingError> {
    let triples = enumerate_triples(d)?;
    let mut out = Vec::new();
    for &t1 in &triples {
        for &t2 in &triples {
            if t1 == t2 || !t1.greens_contain(t2.red) {
                continue;
            }
            let reciprocal = t1.red != t2.red && t2.greens_contain(t1.red);
            if !reciprocal {
                out.push((t1, t2));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs).unwrap()
    }

    #[test]
    fn triples_of_a_single_arc_with_an_isolated_vertex() {
        // Deleting 0 makes {1,2} false twins; deleting 1 makes {0,2} false
        // twins; deleting 2 leaves the arc, whose endpoints are mixed twins.
        let g = d(3, &[(0, 1)]);
        assert_eq!(
            enumerate_triples(&g).unwrap(),
            vec![
                Triple {
                    red: 0,
                    green: (1, 2)
                },
                Triple {
                    red: 1,
                    green: (0, 2)
                },
            ]
        );
        assert_eq!(red_free_vertices(&g).unwrap().to_vec(), vec![2]);
    }

    #[test]
    fn small_digraphs_without_triples() {
        let cycle = d(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(enumerate_triples(&cycle).unwrap(), vec![]);
        assert_eq!(red_free_vertices(&cycle).unwrap().to_vec(), vec![0, 1, 2]);
        let arc = d(2, &[(0, 1)]);
        assert_eq!(enumerate_triples(&arc).unwrap(), vec![]);
        let lone = Digraph::empty(1).unwrap();
        assert_eq!(enumerate_triples(&lone).unwrap(), vec![]);
        assert_eq!(red_free_vertices(&lone).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn requires_point_determining_input() {
        let g = Digraph::empty(2).unwrap();
        assert_eq!(enumerate_triples(&g), Err(NotPointDeterminingError));
        assert_eq!(red_free_vertices(&g), Err(NotPointDeterminingError));
        assert_eq!(
            triple_intersection_violations(&g),
            Err(NotPointDeterminingError)
        );
    }

    #[test]
    fn intersection_rule_holds_on_examples() {
        assert_eq!(
            triple_intersection_violations(&d(3, &[(0, 1)])).unwrap(),
            vec![]
        );
        // A path 0 -> 1 -> 2 plus an isolated vertex has several triples.
        let g = d(4, &[(0, 1), (1, 2)]);
        assert_eq!(triple_intersection_violations(&g).unwrap(), vec![]);
    }

    #[test]
    fn red_vertex_is_the_unique_distinguisher_of_its_greens() {
        let g = d(4, &[(0, 1), (1, 2)]);
        for t in enumerate_triples(&g).unwrap() {
            for w in g.vertices() {
                if w == t.green.0 || w == t.green.1 {
                    continue;
                }
                let expected = w == t.red;
                assert_eq!(
                    twins::distinguishes(&g, w, t.green.0, t.green.1),
                    Ok(expected)
                );
            }
        }
    }
}
