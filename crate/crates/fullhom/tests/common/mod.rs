//! Brute-force oracles, deliberately independent of the library's own
//! algorithms: isomorphism is decided by trying every vertex permutation,
//! partitions are checked straight from the defining rules, and obstruction
//! catalogs come from generate-and-filter over all labeled digraphs.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fullhom::{Digraph, PatternMatrix};
use itertools::Itertools;

/// Every labeled loopless digraph on `n` vertices, one per arc subset.
/// Keep `n` at 4 or below; the count is `2^(n(n-1))`.
pub fn all_labeled_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() <= 20, "too many labeled digraphs to list");
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u64..(1 << pairs.len()) {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        out.push(Digraph::new(n, &arcs).expect("arcs are loop-free and in range"));
    }
    out
}

/// Isomorphism-class key by exhausting all `n!` relabelings and keeping the
/// least row encoding.
pub fn brute_canonical_key(d: &Digraph) -> Vec<u64> {
    let n = d.order();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let mut rows = vec![0u64; n];
            for (u_new, &u_old) in perm.iter().enumerate() {
                for (v_new, &v_old) in perm.iter().enumerate() {
                    if u_new != v_new && d.arc(u_old, v_old) {
                        rows[u_new] |= 1 << v_new;
                    }
                }
            }
            rows
        })
        .min()
        .unwrap_or_default()
}

pub fn brute_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    a.order() == b.order() && brute_canonical_key(a) == brute_canonical_key(b)
}

/// Checks an assignment of vertices to parts against the defining rule: for
/// every ordered pair of distinct vertices, the arc is present exactly when
/// the matrix entry of their parts is 1.
pub fn oracle_check(d: &Digraph, m: &PatternMatrix, parts: &[usize]) -> bool {
    let n = d.order();
    if parts.len() != n || parts.iter().any(|&p| p >= m.size()) {
        return false;
    }
    (0..n).all(|u| (0..n).all(|v| u == v || d.arc(u, v) == m.entry(parts[u], parts[v])))
}

/// Finds the lexicographically least valid assignment by scanning all
/// `m.size()^n` of them, or `None` when there is no valid assignment.
pub fn oracle_solve(d: &Digraph, m: &PatternMatrix) -> Option<Vec<usize>> {
    let n = d.order();
    let k = m.size();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let total = k.checked_pow(n as u32).expect("assignment space fits");
    let mut best: Option<Vec<usize>> = None;
    for code in 0..total {
        let mut c = code;
        let mut parts = vec![0usize; n];
        for slot in parts.iter_mut().rev() {
            *slot = c % k;
            c /= k;
        }
        if oracle_check(d, m, &parts) {
            best = match best {
                Some(old) if old <= parts => Some(old),
                _ => Some(parts),
            };
        }
    }
    best
}

/// Generate-and-filter obstruction catalog: brute keys of the minimal
/// obstructions of `m`, grouped by order. Keep `ceiling` at 4 or below.
pub fn oracle_obstruction_catalog(
    m: &PatternMatrix,
    ceiling: usize,
) -> BTreeMap<usize, BTreeSet<Vec<u64>>> {
    let mut out = BTreeMap::new();
    for n in 1..=ceiling {
        let mut keys = BTreeSet::new();
        for d in all_labeled_digraphs(n) {
            if oracle_solve(&d, m).is_some() {
                continue;
            }
            let minimal = (0..n).all(|v| {
                let (rest, _) = d.delete_vertex(v).expect("vertex in range");
                oracle_solve(&rest, m).is_some()
            });
            if minimal {
                keys.insert(brute_canonical_key(&d));
            }
        }
        if !keys.is_empty() {
            out.insert(n, keys);
        }
    }
    out
}

/// The 2 one-part and 16 two-part pattern matrices.
pub fn all_matrices_up_to_two_parts() -> Vec<PatternMatrix> {
    let mut out = Vec::with_capacity(18);
    for bit in 0..2u8 {
        out.push(PatternMatrix::new(&[vec![bit]]).expect("one-part matrix"));
    }
    for bits in 0..16u8 {
        let e = |i: u8| bits >> i & 1;
        out.push(
            PatternMatrix::new(&[vec![e(0), e(1)], vec![e(2), e(3)]]).expect("two-part matrix"),
        );
    }
    out
}

/// Relabels a digraph; `perm[old]` is the new name of `old`.
pub fn relabel(d: &Digraph, perm: &[usize]) -> Digraph {
    let arcs: Vec<(usize, usize)> = d
        .arcs()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Digraph::new(d.order(), &arcs).expect("relabeling preserves loop-freeness")
}
