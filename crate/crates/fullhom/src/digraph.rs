//! Loopless digraphs on vertex set `{0, .., n-1}` with bitmask adjacency.
//!
//! Arcs are ordered pairs of distinct vertices. Both out- and in-neighborhoods
//! are stored as bit rows, so adjacency queries, twin tests and set predicates
//! are word operations. Digraphs are immutable once built; derived digraphs
//! (deletions, induced subdigraphs, complements) are fresh values.
//!
//! ```
//! use fullhom::Digraph;
//!
//! let d = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
//! assert!(d.arc(0, 1));
//! assert!(!d.arc(1, 0));
//! assert_eq!(d.arc_count(), 3);
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Hard cap on the number of vertices, so vertex sets and adjacency rows fit
/// in single machine words.
pub const MAX_ORDER: usize = 64;

/// Errors from digraph construction and vertex-set arguments.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}: arcs must join distinct vertices")]
    Loop(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooManyVertices(usize),
    #[error("vertex sets must be disjoint")]
    NotDisjoint,
    #[error("vertices must be pairwise distinct")]
    NotDistinct,
}

/// Errors from the digraph and matrix text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed header: first line must be a decimal vertex count")]
    MalformedHeader,
    #[error("row {row}, column {col}: {found:?} is not '0' or '1'")]
    BadCharacter { row: usize, col: usize, found: char },
    #[error("nonzero diagonal entry at vertex {0}: digraphs are loopless")]
    NonzeroDiagonal(usize),
    #[error("row {row} has {found} characters, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("declared order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
}

/// A set of vertices, stored as a bitmask.
///
/// Sets compare lexicographically on their sorted member lists, so
/// `{0,3} < {1,2}` and any set precedes its proper supersets. That is the
/// order used whenever a deterministic witness among equal-sized sets is
/// needed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn universe(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "vertex set too large");
        if n == MAX_ORDER {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_members(members: &[usize]) -> Self {
        members.iter().copied().collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_ORDER, "vertex {v} too large for a vertex set");
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_ORDER {
            self.0 &= !(1 << v);
        }
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub(crate) fn bits(&self) -> u64 {
        self.0
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The order-preserving relabeling that accompanies vertex deletion and
/// induced subdigraphs: new labels `0..k` map back to the original labels in
/// increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    to_old: Vec<usize>,
}

impl Relabeling {
    fn from_kept(kept: impl Iterator<Item = usize>) -> Self {
        Relabeling {
            to_old: kept.collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_old.is_empty()
    }

    /// The original label of new vertex `new`.
    pub fn new_to_old(&self, new: usize) -> usize {
        self.to_old[new]
    }

    /// The new label of original vertex `old`, or `None` if it was removed.
    pub fn old_to_new(&self, old: usize) -> Option<usize> {
        self.to_old.binary_search(&old).ok()
    }
}

/// A loopless digraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out_rows: Vec<u64>,
    in_rows: Vec<u64>,
}

impl Digraph {
    /// Builds a digraph of the given order from a list of arcs. Duplicate
    /// arcs are allowed and collapse; loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut d = Digraph::empty(n)?;
        for &(u, v) in arcs {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            d.out_rows[u] |= 1 << v;
            d.in_rows[v] |= 1 << u;
        }
        Ok(d)
    }

    /// The digraph of the given order with no arcs.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Digraph {
            n,
            out_rows: vec![0; n],
            in_rows: vec![0; n],
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Whether the arc `(u, v)` is present. Panics if either endpoint is out
    /// of range.
    pub fn arc(&self, u: usize, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} out of range");
        self.out_rows[u] >> v & 1 == 1
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            out.extend(self.out_neighbors(u).iter().map(|v| (u, v)));
        }
        out
    }

    pub fn arc_count(&self) -> usize {
        self.out_rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.out_rows[v])
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.in_rows[v])
    }

    pub(crate) fn out_row(&self, v: usize) -> u64 {
        self.out_rows[v]
    }

    pub(crate) fn in_row(&self, v: usize) -> u64 {
        self.in_rows[v]
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::OutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        match s.iter().find(|&v| v >= self.n) {
            Some(v) => Err(GraphError::OutOfRange {
                vertex: v,
                order: self.n,
            }),
            None => Ok(()),
        }
    }

    /// Removes one vertex; the survivors keep their relative order under the
    /// returned relabeling.
    pub fn delete_vertex(&self, v: usize) -> Result<(Digraph, Relabeling), GraphError> {
        self.check_vertex(v)?;
        let mut keep = VertexSet::universe(self.n);
        keep.remove(v);
        self.induced_subdigraph(keep)
    }

    /// The subdigraph induced on `s`, relabeled order-preservingly to
    /// `0..|s|`.
    pub fn induced_subdigraph(&self, s: VertexSet) -> Result<(Digraph, Relabeling), GraphError> {
        self.check_set(s)?;
        let map = Relabeling::from_kept(s.iter());
        let k = map.len();
        let mut sub = Digraph::empty(k).expect("induced order fits");
        for (new_u, old_u) in map.to_old.iter().enumerate() {
            for (new_v, old_v) in map.to_old.iter().enumerate() {
                if new_u != new_v && self.arc(*old_u, *old_v) {
                    sub.out_rows[new_u] |= 1 << new_v;
                    sub.in_rows[new_v] |= 1 << new_u;
                }
            }
        }
        Ok((sub, map))
    }

    /// The digraph on the same vertices whose arcs are exactly the missing
    /// ordered pairs of distinct vertices.
    pub fn complement(&self) -> Digraph {
        let full = VertexSet::universe(self.n).bits();
        let mut out_rows = vec![0u64; self.n];
        let mut in_rows = vec![0u64; self.n];
        for v in self.vertices() {
            out_rows[v] = !self.out_rows[v] & full & !(1 << v);
            in_rows[v] = !self.in_rows[v] & full & !(1 << v);
        }
        Digraph {
            n: self.n,
            out_rows,
            in_rows,
        }
    }

    /// No arcs at all among members of `s`.
    pub fn is_independent_set(&self, s: VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(s.iter().all(|v| self.out_rows[v] & s.bits() == 0))
    }

    /// Every ordered pair of distinct members of `s` is an arc.
    pub fn is_strong_clique(&self, s: VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        let want = s.bits();
        Ok(s.iter()
            .all(|v| self.out_rows[v] & want == want & !(1 << v)))
    }

    /// Every arc from `s` to `t` is present, for disjoint sets.
    pub fn is_completely_adjacent(&self, s: VertexSet, t: VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        self.check_set(t)?;
        if s.bits() & t.bits() != 0 {
            return Err(GraphError::NotDisjoint);
        }
        Ok(s.iter().all(|v| self.out_rows[v] & t.bits() == t.bits()))
    }

    /// No arcs from `s` to `t`, for disjoint sets.
    pub fn is_completely_nonadjacent(
        &self,
        s: VertexSet,
        t: VertexSet,
    ) -> Result<bool, GraphError> {
        self.check_set(s)?;
        self.check_set(t)?;
        if s.bits() & t.bits() != 0 {
            return Err(GraphError::NotDisjoint);
        }
        Ok(s.iter().all(|v| self.out_rows[v] & t.bits() == 0))
    }

    /// Appends a vertex with the given adjacency pattern: bit `j` of
    /// `out_mask` adds the arc `(n, j)`, bit `j` of `in_mask` adds `(j, n)`.
    pub(crate) fn with_appended_vertex(&self, out_mask: u64, in_mask: u64) -> Digraph {
        let new = self.n;
        debug_assert!(new < MAX_ORDER);
        debug_assert_eq!(out_mask & !(VertexSet::universe(new).bits()), 0);
        debug_assert_eq!(in_mask & !(VertexSet::universe(new).bits()), 0);
        let mut out_rows = self.out_rows.clone();
        let mut in_rows = self.in_rows.clone();
        for j in VertexSet(in_mask).iter() {
            out_rows[j] |= 1 << new;
        }
        for j in VertexSet(out_mask).iter() {
            in_rows[j] |= 1 << new;
        }
        out_rows.push(out_mask);
        in_rows.push(in_mask);
        Digraph {
            n: new + 1,
            out_rows,
            in_rows,
        }
    }

    /// Parses the text format: a decimal order on the first line, then one
    /// row of `0`/`1` characters per vertex, where character `j` of row `i`
    /// records the arc `(i, j)`. The diagonal must be all zeros.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let (n, rows) = parse_square_rows(text)?;
        for (i, row) in rows.iter().enumerate() {
            if row >> i & 1 == 1 {
                return Err(ParseError::NonzeroDiagonal(i));
            }
        }
        let mut in_rows = vec![0u64; n];
        for (i, &row) in rows.iter().enumerate() {
            for j in VertexSet(row).iter() {
                in_rows[j] |= 1 << i;
            }
        }
        Ok(Digraph {
            n,
            out_rows: rows,
            in_rows,
        })
    }

    /// Serializes to the text format accepted by [`Digraph::parse`], with a
    /// trailing newline.
    pub fn to_text(&self) -> String {
        rows_to_text(self.n, &self.out_rows)
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({}; ", self.n)?;
        for (i, (u, v)) in self.arcs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Digraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Digraph::parse(s)
    }
}

/// Shared row reader for the digraph and matrix formats: returns the declared
/// size and one bit row per line. Diagonal entries are not constrained here.
pub(crate) fn parse_square_rows(text: &str) -> Result<(usize, Vec<u64>), ParseError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    // A trailing newline leaves one empty final piece; drop it.
    if lines.last() == Some(&"") {
        lines.pop();
    }
    let header = *lines.first().ok_or(ParseError::MalformedHeader)?;
    if header.is_empty() || !header.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::MalformedHeader);
    }
    let n: usize = header.parse().map_err(|_| ParseError::MalformedHeader)?;
    if n > MAX_ORDER {
        return Err(ParseError::OrderTooLarge(n));
    }
    let body = &lines[1..];
    if body.len() != n {
        return Err(ParseError::WrongRowCount {
            expected: n,
            found: body.len(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (i, line) in body.iter().enumerate() {
        let found = line.chars().count();
        if found != n {
            return Err(ParseError::RaggedRow {
                row: i,
                expected: n,
                found,
            });
        }
        let mut row = 0u64;
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => row |= 1 << j,
                _ => {
                    return Err(ParseError::BadCharacter {
                        row: i,
                        col: j,
                        found: ch,
                    });
                }
            }
        }
        rows.push(row);
    }
    Ok((n, rows))
}

pub(crate) fn rows_to_text(n: usize, rows: &[u64]) -> String {
    let mut s = String::with_capacity(n * (n + 1) + 8);
    s.push_str(&n.to_string());
    s.push('\n');
    for &row in rows {
        for j in 0..n {
            s.push(if row >> j & 1 == 1 { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs).unwrap()
    }

    #[test]
    fn construction_rejects_loops_and_bad_endpoints() {
        assert_eq!(Digraph::new(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Digraph::new(2, &[(0, 2)]),
            Err(GraphError::OutOfRange {
                vertex: 2,
                order: 2
            })
        );
        assert_eq!(Digraph::empty(65), Err(GraphError::TooManyVertices(65)));
    }

    #[test]
    fn duplicate_arcs_collapse() {
        let g = d(2, &[(0, 1), (0, 1)]);
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn empty_order_zero_is_legal_everywhere() {
        let g = Digraph::empty(0).unwrap();
        assert_eq!(g.order(), 0);
        assert_eq!(g.arcs(), vec![]);
        assert_eq!(g.complement().order(), 0);
        assert_eq!(g.to_text(), "0\n");
        assert_eq!(Digraph::parse("0\n").unwrap(), g);
    }

    #[test]
    fn neighborhoods() {
        let g = d(3, &[(0, 1), (2, 1)]);
        assert_eq!(g.out_neighbors(0).to_vec(), vec![1]);
        assert_eq!(g.in_neighbors(1).to_vec(), vec![0, 2]);
        assert_eq!(g.in_neighbors(0).to_vec(), Vec::<usize>::new());
    }

    #[test]
    fn delete_vertex_relabels_order_preservingly() {
        let g = d(4, &[(0, 2), (2, 3), (3, 1)]);
        let (h, map) = g.delete_vertex(2).unwrap();
        assert_eq!(h.order(), 3);
        // Surviving arc (3,1) becomes (2,1).
        assert_eq!(h.arcs(), vec![(2, 1)]);
        assert_eq!(map.new_to_old(2), 3);
        assert_eq!(map.old_to_new(3), Some(2));
        assert_eq!(map.old_to_new(2), None);
    }

    #[test]
    fn delete_matches_induced_on_the_rest() {
        let g = d(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]);
        for v in g.vertices() {
            let mut keep = VertexSet::universe(4);
            keep.remove(v);
            let (del, dm) = g.delete_vertex(v).unwrap();
            let (ind, im) = g.induced_subdigraph(keep).unwrap();
            assert_eq!(del, ind);
            assert_eq!(dm, im);
        }
    }

    #[test]
    fn complement_swaps_arcs_and_nonarcs() {
        let g = d(3, &[(0, 1)]);
        let c = g.complement();
        assert!(!c.arc(0, 1));
        assert!(c.arc(1, 0));
        assert!(c.arc(0, 2) && c.arc(2, 0) && c.arc(1, 2) && c.arc(2, 1));
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn set_predicates() {
        let g = d(3, &[(0, 1), (1, 0), (2, 0)]);
        let s01 = VertexSet::from_members(&[0, 1]);
        let s2 = VertexSet::from_members(&[2]);
        assert!(g.is_strong_clique(s01).unwrap());
        assert!(!g.is_independent_set(s01).unwrap());
        assert!(g.is_independent_set(s2).unwrap());
        assert!(g
            .is_completely_adjacent(s2, VertexSet::from_members(&[0]))
            .unwrap());
        assert!(!g.is_completely_adjacent(s2, s01).unwrap());
        assert!(g
            .is_completely_nonadjacent(VertexSet::from_members(&[1]), s2)
            .unwrap());
        assert_eq!(
            g.is_completely_adjacent(s01, VertexSet::from_members(&[1, 2])),
            Err(GraphError::NotDisjoint)
        );
        assert_eq!(
            g.is_independent_set(VertexSet::from_members(&[3])),
            Err(GraphError::OutOfRange {
                vertex: 3,
                order: 3
            })
        );
    }

    #[test]
    fn empty_set_predicates_hold_vacuously() {
        let g = d(2, &[(0, 1)]);
        assert!(g.is_independent_set(VertexSet::EMPTY).unwrap());
        assert!(g.is_strong_clique(VertexSet::EMPTY).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let g = d(3, &[(0, 1), (2, 0), (2, 1)]);
        let text = g.to_text();
        assert_eq!(text, "3\n010\n000\n110\n");
        assert_eq!(Digraph::parse(&text).unwrap(), g);
        // Also accepted without the trailing newline.
        assert_eq!(Digraph::parse(text.trim_end()).unwrap(), g);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(Digraph::parse(""), Err(ParseError::MalformedHeader));
        assert_eq!(Digraph::parse("x\n"), Err(ParseError::MalformedHeader));
        assert_eq!(Digraph::parse("-1\n"), Err(ParseError::MalformedHeader));
        assert_eq!(
            Digraph::parse("2\n0a\n00\n"),
            Err(ParseError::BadCharacter {
                row: 0,
                col: 1,
                found: 'a'
            })
        );
        assert_eq!(
            Digraph::parse("2\n01\n11\n"),
            Err(ParseError::NonzeroDiagonal(1))
        );
        assert_eq!(
            Digraph::parse("2\n010\n00\n"),
            Err(ParseError::RaggedRow {
                row: 0,
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            Digraph::parse("2\n01\n"),
            Err(ParseError::WrongRowCount {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            Digraph::parse("3\n010\n000\n110\n000\n"),
            Err(ParseError::WrongRowCount {
                expected: 3,
                found: 4
            })
        );
        assert_eq!(Digraph::parse("65\n"), Err(ParseError::OrderTooLarge(65)));
    }

    #[test]
    fn vertex_set_order_is_lexicographic_on_members() {
        let a = VertexSet::from_members(&[0, 3]);
        let b = VertexSet::from_members(&[1, 2]);
        assert!(a < b);
        let c = VertexSet::from_members(&[0]);
        assert!(c < a);
        assert_eq!(format!("{:?}", b), "{1, 2}");
    }

    #[test]
    fn appended_vertex_wires_both_directions() {
        let g = d(2, &[(0, 1)]);
        let h = g.with_appended_vertex(0b01, 0b10);
        assert_eq!(h.order(), 3);
        assert!(h.arc(2, 0));
        assert!(!h.arc(2, 1));
        assert!(h.arc(1, 2));
        assert!(!h.arc(0, 2));
        assert!(h.arc(0, 1));
    }
}
