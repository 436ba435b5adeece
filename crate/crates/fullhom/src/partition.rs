//! Matrix partitions: validation, search, and the extension lemma.
//!
//! Given a digraph `D` and a pattern matrix `M` of size `m`, an `M`-partition
//! assigns every vertex to one of `m` parts so that each part with diagonal 0
//! is an independent set, each part with diagonal 1 is a strong clique, and
//! for distinct parts `i`, `j` the arcs from part `i` to part `j` are all
//! present when `M[i][j] = 1` and all absent when it is 0. Parts may be
//! empty. Reading `M` as a reflexive-loop template digraph `H`, an
//! `M`-partition is the same thing as a full homomorphism `D -> H`: distinct
//! vertices `x`, `y` satisfy `(x,y) in D` exactly when `(f(x),f(y)) in H`.
//!
//! The solver is a backtracking search over parts with forward checking,
//! visiting vertices by descending degree. Its published answer is searched
//! again coordinate by coordinate, so the partition returned is always the
//! lexicographically least one under vertex order and part order, no matter
//! how the internal search got there.
//!
//! ```
//! use fullhom::{Digraph, PatternMatrix, solve_mpartition};
//!
//! let d = Digraph::new(2, &[(0, 1)]).unwrap();
//! let m = PatternMatrix::parse("2\n00\n11\n").unwrap();
//! let p = solve_mpartition(&d, &m).unwrap();
//! assert_eq!(p.as_slice(), &[1, 0]);
//! ```

use thiserror::Error;

use crate::digraph::{Digraph, GraphError, VertexSet};
use crate::pattern::PatternMatrix;
use crate::twins;

/// A total assignment of vertices to parts `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Self {
        Partition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.parts[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.parts
    }

    pub fn members_of(&self, part: usize) -> VertexSet {
        self.parts
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == part)
            .map(|(v, _)| v)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition assigns {found} vertices, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("vertex {vertex} is assigned part {part}, but only {parts} parts exist")]
    PartOutOfRange {
        vertex: usize,
        part: usize,
        parts: usize,
    },
}

/// Which constraint a partition breaks first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationRule {
    /// An arc inside a part that must be independent.
    DiagonalZero,
    /// A missing arc inside a part that must be a strong clique.
    DiagonalOne,
    /// An arc between parts that must be completely nonadjacent.
    OffDiagonalZero,
    /// A missing arc between parts that must be completely adjacent.
    OffDiagonalOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub rule: ViolationRule,
    /// The ordered vertex pair at fault.
    pub vertices: (usize, usize),
    /// Their parts, in the same order.
    pub parts: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionVerdict {
    Valid,
    Invalid(Violation),
}

impl PartitionVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PartitionVerdict::Valid)
    }

    /// The violation behind an invalid verdict, if any.
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            PartitionVerdict::Valid => None,
            PartitionVerdict::Invalid(v) => Some(v),
        }
    }
}

/// Checks a total assignment against every ordered pair of distinct
/// vertices, reporting the first violation in scan order.
pub fn validate_partition(
    d: &Digraph,
    m: &PatternMatrix,
    p: &Partition,
) -> Result<PartitionVerdict, PartitionError> {
    let n = d.order();
    if p.len() != n {
        return Err(PartitionError::WrongLength {
            expected: n,
            found: p.len(),
        });
    }
    for v in 0..n {
        if p.part_of(v) >= m.size() {
            return Err(PartitionError::PartOutOfRange {
                vertex: v,
                part: p.part_of(v),
                parts: m.size(),
            });
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let (pu, pv) = (p.part_of(u), p.part_of(v));
            let want = m.entry(pu, pv);
            if d.arc(u, v) != want {
                let rule = match (pu == pv, want) {
                    (true, false) => ViolationRule::DiagonalZero,
                    (true, true) => ViolationRule::DiagonalOne,
                    (false, false) => ViolationRule::OffDiagonalZero,
                    (false, true) => ViolationRule::OffDiagonalOne,
                };
                return Ok(PartitionVerdict::Invalid(Violation {
                    rule,
                    vertices: (u, v),
                    parts: (pu, pv),
                }));
            }
        }
    }
    Ok(PartitionVerdict::Valid)
}

/// Parts `q` that vertex `u` may take given that `v` sits in part `p`.
fn compatible_parts(d: &Digraph, m: &PatternMatrix, u: usize, v: usize, p: usize) -> u64 {
    let auv = d.arc(u, v);
    let avu = d.arc(v, u);
    let mut mask = 0u64;
    for q in 0..m.size() {
        let ok = if p == q {
            if m.entry(p, p) {
                auv && avu
            } else {
                !auv && !avu
            }
        } else {
            avu == m.entry(p, q) && auv == m.entry(q, p)
        };
        if ok {
            mask |= 1 << q;
        }
    }
    mask
}

/// Decides whether an `M`-partition exists, with some vertices optionally
/// pinned to a part.
///
/// `pinned` holds one entry per vertex; an empty slice pins nothing. A pin
/// outside the matrix makes the instance unsatisfiable.
///
/// The search backtracks over parts with forward checking. Pinned vertices
/// are assigned first; the rest are visited in descending total-degree
/// order, which empirically shrinks the tree.
///
/// # Panics
///
/// Panics if `pinned` is neither empty nor of length `d.order()`.
pub fn satisfiable(d: &Digraph, m: &PatternMatrix, pinned: &[Option<usize>]) -> bool {
    let n = d.order();
    assert!(
        pinned.is_empty() || pinned.len() == n,
        "pinned must have one entry per vertex"
    );
    if m.size() == 0 {
        return n == 0;
    }
    let full = VertexSet::universe(m.size()).bits();
    let mut domains = vec![full; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for (v, pin) in pinned.iter().enumerate() {
        if let Some(p) = pin {
            if *p >= m.size() {
                return false;
            }
            domains[v] = 1 << p;
            order.push(v);
        }
    }
    let mut rest: Vec<usize> = (0..n)
        .filter(|v| pinned.get(*v).copied().flatten().is_none())
        .collect();
    rest.sort_by_key(|&v| std::cmp::Reverse(d.out_neighbors(v).len() + d.in_neighbors(v).len()));
    order.extend(rest);
    assign(d, m, &order, 0, &mut domains)
}

fn assign(
    d: &Digraph,
    m: &PatternMatrix,
    order: &[usize],
    pos: usize,
    domains: &mut [u64],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let mut cand = domains[v];
    while cand != 0 {
        let p = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let mut saved: Vec<(usize, u64)> = Vec::new();
        let mut dead = false;
        for &u in &order[pos + 1..] {
            let pruned = domains[u] & compatible_parts(d, m, u, v, p);
            if pruned != domains[u] {
                saved.push((u, domains[u]));
                domains[u] = pruned;
                if pruned == 0 {
                    dead = true;
                    break;
                }
            }
        }
        if !dead && assign(d, m, order, pos + 1, domains) {
            return true;
        }
        for (u, old) in saved {
            domains[u] = old;
        }
    }
    false
}

pub(crate) fn has_partition(d: &Digraph, m: &PatternMatrix) -> bool {
    satisfiable(d, m, &vec![None; d.order()])
}

/// The lexicographically least `M`-partition of `D` under vertex order and
/// part order, or `None` when no partition exists.
pub fn solve_mpartition(d: &Digraph, m: &PatternMatrix) -> Option<Partition> {
    let n = d.order();
    let mut pinned: Vec<Option<usize>> = vec![None; n];
    if !satisfiable(d, m, &pinned) {
        return None;
    }
    // Fix each vertex in turn to its least completable part; the search
    // order inside `satisfiable` cannot influence this choice.
    for v in 0..n {
        let chosen = (0..m.size()).find(|&p| {
            pinned[v] = Some(p);
            let ok = satisfiable(d, m, &pinned);
            if !ok {
                pinned[v] = None;
            }
            ok
        });
        debug_assert!(chosen.is_some(), "a satisfiable prefix must extend");
    }
    let partition = Partition::new(pinned.into_iter().map(|p| p.expect("pinned")).collect());
    debug_assert_eq!(
        validate_partition(d, m, &partition),
        Ok(PartitionVerdict::Valid)
    );
    Some(partition)
}

/// A full homomorphism to the template digraph of `M`, as a map from each
/// vertex to a template vertex, or `None` when there is none. This succeeds
/// exactly when [`solve_mpartition`] does: the preimage sets of a full
/// homomorphism are an `M`-partition and vice versa.
pub fn find_full_homomorphism(d: &Digraph, m: &PatternMatrix) -> Option<Vec<usize>> {
    solve_mpartition(d, m).map(Partition::into_vec)
}

/// Whether `D` has no `M`-partition while every single-vertex deletion has
/// one.
pub fn is_minimal_obstruction(d: &Digraph, m: &PatternMatrix) -> bool {
    if has_partition(d, m) {
        return false;
    }
    d.vertices().all(|v| {
        let (rest, _) = d.delete_vertex(v).expect("vertex in range");
        has_partition(&rest, m)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("S is not homogeneous in the digraph")]
    NotHomogeneous,
    #[error("the vertex to add must be a member of S")]
    VertexNotInSet,
    #[error("S must have at least two members")]
    SetTooSmall,
    #[error("S is neither a strong clique nor an independent set")]
    MixedSet,
    #[error(transparent)]
    BasePartition(#[from] PartitionError),
    #[error("the base partition is not valid for the deleted digraph")]
    BaseNotValid(Violation),
    #[error("no part of matching kind meets S minus the added vertex")]
    NoMatchingPart,
}

/// Rebuilds a partition of `D` from a partition `p` of `D - v`, exploiting a
/// homogeneous set `S` containing `v`: if `S` is a strong clique (resp.
/// independent) and some member of `S - v` lies in a clique (resp.
/// independent) part, then `v` can join that part. The smallest such part is
/// chosen. Part indices refer to `M` as given; vertex `v` keeps its label in
/// `D` while `p` uses the deletion labeling.
pub fn extend_partition_homogeneous(
    d: &Digraph,
    m: &PatternMatrix,
    v: usize,
    p: &Partition,
    s: VertexSet,
) -> Result<Partition, ExtendError> {
    if v >= d.order() {
        return Err(GraphError::OutOfRange {
            vertex: v,
            order: d.order(),
        }
        .into());
    }
    if !twins::is_homogeneous(d, s)? {
        return Err(ExtendError::NotHomogeneous);
    }
    if !s.contains(v) {
        return Err(ExtendError::VertexNotInSet);
    }
    if s.len() < 2 {
        return Err(ExtendError::SetTooSmall);
    }
    let clique = d.is_strong_clique(s)?;
    if !clique && !d.is_independent_set(s)? {
        return Err(ExtendError::MixedSet);
    }
    let (rest, map) = d.delete_vertex(v).expect("vertex in range");
    match validate_partition(&rest, m, p)? {
        PartitionVerdict::Valid => {}
        PartitionVerdict::Invalid(violation) => {
            return Err(ExtendError::BaseNotValid(violation));
        }
    }
    let target = (0..m.size())
        .filter(|&i| m.entry(i, i) == clique)
        .find(|&i| {
            s.iter()
                .filter(|&u| u != v)
                .any(|u| p.part_of(map.old_to_new(u).expect("member of D - v")) == i)
        })
        .ok_or(ExtendError::NoMatchingPart)?;
    let parts: Vec<usize> = (0..d.order())
        .map(|w| {
            if w == v {
                target
            } else {
                p.part_of(map.old_to_new(w).expect("member of D - v"))
            }
        })
        .collect();
    let extended = Partition::new(parts);
    debug_assert_eq!(
        validate_partition(d, m, &extended),
        Ok(PartitionVerdict::Valid),
        "the homogeneous extension must be valid when the preconditions hold"
    );
    Ok(extended)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs).unwrap()
    }

    fn m(text: &str) -> PatternMatrix {
        PatternMatrix::parse(text).unwrap()
    }

    #[test]
    fn validate_accepts_a_mixed_partition() {
        // Part 1 is a clique holding vertex 0, part 0 independent holding 1;
        // the arc (0,1) realizes complete adjacency from part 1 to part 0.
        let verdict = validate_partition(
            &d(2, &[(0, 1)]),
            &m("2\n00\n11\n"),
            &Partition::new(vec![1, 0]),
        );
        assert_eq!(verdict, Ok(PartitionVerdict::Valid));
    }

    #[test]
    fn validate_reports_first_violation_by_rule() {
        let independent = m("1\n0\n");
        let clique = m("1\n1\n");
        let digon = d(2, &[(0, 1), (1, 0)]);
        let verdict = validate_partition(&digon, &independent, &Partition::new(vec![0, 0]));
        assert_eq!(
            verdict,
            Ok(PartitionVerdict::Invalid(Violation {
                rule: ViolationRule::DiagonalZero,
                vertices: (0, 1),
                parts: (0, 0),
            }))
        );
        let pair = Digraph::empty(2).unwrap();
        let verdict = validate_partition(&pair, &clique, &Partition::new(vec![0, 0]));
        assert_eq!(
            verdict,
            Ok(PartitionVerdict::Invalid(Violation {
                rule: ViolationRule::DiagonalOne,
                vertices: (0, 1),
                parts: (0, 0),
            }))
        );
        let two = m("2\n00\n11\n");
        let verdict = validate_partition(&d(2, &[(0, 1)]), &two, &Partition::new(vec![0, 1]));
        assert_eq!(
            verdict,
            Ok(PartitionVerdict::Invalid(Violation {
                rule: ViolationRule::OffDiagonalZero,
                vertices: (0, 1),
                parts: (0, 1),
            }))
        );
        let verdict = validate_partition(&pair, &two, &Partition::new(vec![1, 0]));
        assert_eq!(
            verdict,
            Ok(PartitionVerdict::Invalid(Violation {
                rule: ViolationRule::OffDiagonalOne,
                vertices: (0, 1),
                parts: (1, 0),
            }))
        );
    }

    #[test]
    fn validate_rejects_malformed_partitions() {
        let g = d(2, &[(0, 1)]);
        let mm = m("1\n0\n");
        assert_eq!(
            validate_partition(&g, &mm, &Partition::new(vec![0])),
            Err(PartitionError::WrongLength {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            validate_partition(&g, &mm, &Partition::new(vec![0, 3])),
            Err(PartitionError::PartOutOfRange {
                vertex: 1,
                part: 3,
                parts: 1
            })
        );
    }

    #[test]
    fn solver_finds_the_lexicographically_least_partition() {
        let p = solve_mpartition(&Digraph::empty(2).unwrap(), &m("1\n0\n")).unwrap();
        assert_eq!(p.as_slice(), &[0, 0]);
        let p = solve_mpartition(&d(2, &[(0, 1)]), &m("2\n00\n11\n")).unwrap();
        assert_eq!(p.as_slice(), &[1, 0]);
    }

    #[test]
    fn solver_reports_absence() {
        // One arc plus an isolated vertex cannot split into one independent
        // part and one clique part fully adjacent to it.
        assert_eq!(solve_mpartition(&d(3, &[(0, 1)]), &m("2\n00\n11\n")), None);
        assert_eq!(solve_mpartition(&d(2, &[(0, 1)]), &m("1\n0\n")), None);
    }

    #[test]
    fn degenerate_sizes() {
        let zero = m("0\n");
        assert!(solve_mpartition(&Digraph::empty(0).unwrap(), &zero).is_some());
        assert_eq!(solve_mpartition(&Digraph::empty(1).unwrap(), &zero), None);
        let one = m("1\n0\n");
        let p = solve_mpartition(&Digraph::empty(0).unwrap(), &one).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn full_homomorphism_agrees_with_partitions() {
        let g = d(2, &[(0, 1)]);
        let mm = m("2\n00\n11\n");
        assert_eq!(find_full_homomorphism(&g, &mm), Some(vec![1, 0]));
        assert_eq!(find_full_homomorphism(&d(3, &[(0, 1)]), &mm), None);
    }

    #[test]
    fn minimal_obstruction_examples() {
        let independent = m("1\n0\n");
        assert!(is_minimal_obstruction(&d(2, &[(0, 1)]), &independent));
        assert!(is_minimal_obstruction(
            &d(2, &[(0, 1), (1, 0)]),
            &independent
        ));
        assert!(!is_minimal_obstruction(
            &Digraph::empty(2).unwrap(),
            &independent
        ));
        // Solvable digraphs are never obstructions, and a digraph with an
        // unsolvable proper deletion is not minimal.
        let two = m("2\n00\n11\n");
        assert!(is_minimal_obstruction(&d(3, &[(0, 1)]), &two));
        assert!(is_minimal_obstruction(&d(3, &[(0, 1), (1, 2)]), &two));
        let star = d(4, &[(0, 1), (1, 2), (3, 0)]);
        assert!(!is_minimal_obstruction(&star, &two));
    }

    #[test]
    fn extension_across_a_homogeneous_clique() {
        let digon = d(2, &[(0, 1), (1, 0)]);
        let clique = m("1\n1\n");
        let s = VertexSet::from_members(&[0, 1]);
        let extended =
            extend_partition_homogeneous(&digon, &clique, 1, &Partition::new(vec![0]), s).unwrap();
        assert_eq!(extended.as_slice(), &[0, 0]);
    }

    #[test]
    fn extension_across_a_homogeneous_independent_set() {
        // Vertices 1 and 2 are false twins dominated by 0.
        let g = d(3, &[(0, 1), (0, 2)]);
        let mm = m("2\n00\n11\n");
        // D - 2 partitions as 0 in the clique part, 1 in the independent part.
        let base = Partition::new(vec![1, 0]);
        let s = VertexSet::from_members(&[1, 2]);
        let extended = extend_partition_homogeneous(&g, &mm, 2, &base, s).unwrap();
        assert_eq!(extended.as_slice(), &[1, 0, 0]);
    }

    #[test]
    fn extension_preconditions_each_have_their_own_error() {
        let g = d(3, &[(0, 1)]);
        let mm = m("1\n0\n");
        let base = Partition::new(vec![0, 0]);
        assert_eq!(
            extend_partition_homogeneous(&g, &mm, 2, &base, VertexSet::from_members(&[1, 2])),
            Err(ExtendError::NotHomogeneous)
        );
        let digon = d(2, &[(0, 1), (1, 0)]);
        let clique = m("1\n1\n");
        let s = VertexSet::from_members(&[0, 1]);
        assert_eq!(
            extend_partition_homogeneous(
                &digon,
                &clique,
                1,
                &Partition::new(vec![0]),
                VertexSet::from_members(&[0])
            ),
            Err(ExtendError::VertexNotInSet)
        );
        assert_eq!(
            extend_partition_homogeneous(
                &digon,
                &clique,
                1,
                &Partition::new(vec![0]),
                VertexSet::from_members(&[1])
            ),
            Err(ExtendError::SetTooSmall)
        );
        let arc = d(2, &[(0, 1)]);
        assert_eq!(
            extend_partition_homogeneous(&arc, &clique, 1, &Partition::new(vec![0]), s),
            Err(ExtendError::MixedSet)
        );
        assert_eq!(
            extend_partition_homogeneous(&digon, &clique, 1, &Partition::new(vec![0, 0]), s),
            Err(ExtendError::BasePartition(PartitionError::WrongLength {
                expected: 1,
                found: 2
            }))
        );
        assert_eq!(
            extend_partition_homogeneous(&digon, &clique, 5, &Partition::new(vec![0]), s),
            Err(ExtendError::Graph(GraphError::OutOfRange {
                vertex: 5,
                order: 2
            }))
        );
    }

    #[test]
    fn extension_rejects_an_invalid_base_partition() {
        // {0,1} is a homogeneous digon; 2 dominates both. Assigning all of
        // D - 1 to the clique part fails because the digon is gone there.
        let g = d(3, &[(0, 1), (1, 0), (2, 0), (2, 1)]);
        let mm = m("2\n10\n00\n");
        let base = Partition::new(vec![0, 0]);
        let s = VertexSet::from_members(&[0, 1]);
        assert_eq!(
            extend_partition_homogeneous(&g, &mm, 1, &base, s),
            Err(ExtendError::BaseNotValid(Violation {
                rule: ViolationRule::DiagonalOne,
                vertices: (0, 1),
                parts: (0, 0),
            }))
        );
    }

    #[test]
    fn extension_requires_a_part_of_matching_kind() {
        // The independent pair {0,1} has its partner sitting in the clique
        // part, so the matching-kind search fails.
        let pair = Digraph::empty(2).unwrap();
        let mm = m("2\n10\n00\n");
        // D - 1 is a single vertex; put it in the clique part 0.
        let base = Partition::new(vec![0]);
        let s = VertexSet::from_members(&[0, 1]);
        assert_eq!(
            extend_partition_homogeneous(&pair, &mm, 1, &base, s),
            Err(ExtendError::NoMatchingPart)
        );
    }
}
