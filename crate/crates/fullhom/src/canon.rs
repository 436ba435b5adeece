//! Canonical forms, isomorphism tests and automorphism orbits.
//!
//! Canonical labeling runs in two phases. A degree-pair refinement first
//! partitions the vertices into classes that any isomorphism must respect:
//! the initial class of a vertex is its (out-degree, in-degree) pair, and
//! classes are split repeatedly on the multiset of neighbor classes until
//! stable. A backtracking search then ranges over the labelings that respect
//! the class order and keeps the lexicographically least adjacency encoding.
//! Two prunings keep the search small: branches whose partial encoding
//! already exceeds the best are cut, and at the root, vertices lying in the
//! orbit of an already-explored vertex under the automorphisms discovered so
//! far are skipped.
//!
//! ```
//! use fullhom::Digraph;
//!
//! let a = Digraph::new(2, &[(0, 1)]).unwrap();
//! let b = Digraph::new(2, &[(1, 0)]).unwrap();
//! assert!(a.are_isomorphic(&b));
//! assert_eq!(a.canonical_form(), b.canonical_form());
//! ```

use crate::digraph::Digraph;

/// A byte string that is equal for two digraphs exactly when they are
/// isomorphic. Ordering these strings orders isomorphism classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Everything the labeling search learns about one digraph.
pub(crate) struct Canonicalization {
    /// The canonical representative of the isomorphism class.
    pub digraph: Digraph,
    pub form: CanonicalForm,
    /// Map from original vertex to its canonical position.
    pub labeling: Vec<usize>,
    /// Discovered automorphisms (original vertex to original vertex). They
    /// generate the full automorphism group.
    pub automorphisms: Vec<Vec<usize>>,
    orbit_root: Vec<usize>,
}

impl Canonicalization {
    /// Whether `u` and `v` lie in one automorphism orbit.
    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbit_root[u] == self.orbit_root[v]
    }
}

impl Digraph {
    /// The canonical byte form of this digraph's isomorphism class.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonicalize(self).form
    }

    /// The canonical representative: a relabeled copy that is identical for
    /// all members of the isomorphism class.
    pub fn canonical(&self) -> Digraph {
        canonicalize(self).digraph
    }

    pub fn are_isomorphic(&self, other: &Digraph) -> bool {
        self.order() == other.order()
            && self.arc_count() == other.arc_count()
            && self.canonical_form() == other.canonical_form()
    }
}

pub(crate) fn canonicalize(d: &Digraph) -> Canonicalization {
    let n = d.order();
    if n == 0 {
        return Canonicalization {
            digraph: d.clone(),
            form: CanonicalForm(vec![0]),
            labeling: vec![],
            automorphisms: vec![],
            orbit_root: vec![],
        };
    }

    let colors = stable_coloring(d);
    // Vertices of class c occupy a contiguous block of canonical positions.
    let class_count = colors.iter().max().unwrap() + 1;
    let mut block_color = Vec::with_capacity(n);
    for c in 0..class_count {
        block_color.extend(colors.iter().filter(|&&x| x == c).map(|_| c));
    }

    let mut search = Search {
        d,
        n,
        colors,
        block_color,
        perm: Vec::with_capacity(n),
        used: 0,
        bits: Vec::with_capacity(n * n),
        best_bits: None,
        best_perm: vec![],
        best_gen: 0,
        automorphisms: vec![],
        uf: (0..n).collect(),
        root_tried: vec![],
    };
    search.dfs(0, true);

    let best_perm = search.best_perm;
    let mut labeling = vec![0; n];
    for (pos, &v) in best_perm.iter().enumerate() {
        labeling[v] = pos;
    }
    let arcs: Vec<(usize, usize)> = d
        .arcs()
        .into_iter()
        .map(|(u, v)| (labeling[u], labeling[v]))
        .collect();
    let canonical = Digraph::new(n, &arcs).expect("relabeling preserves validity");
    let form = encode(&canonical);
    let mut uf = search.uf;
    let orbit_root = (0..n).map(|v| find(&mut uf, v)).collect();
    Canonicalization {
        digraph: canonical,
        form,
        labeling,
        automorphisms: search.automorphisms,
        orbit_root,
    }
}

/// Refines vertices into classes by (out-degree, in-degree), then repeatedly
/// by the multisets of out- and in-neighbor classes. Class numbers order the
/// classes by their refinement signature, so they are isomorphism-invariant.
fn stable_coloring(d: &Digraph) -> Vec<usize> {
    let n = d.order();
    let degree_pairs: Vec<(usize, usize)> = (0..n)
        .map(|v| (d.out_neighbors(v).len(), d.in_neighbors(v).len()))
        .collect();
    let mut colors = rank(&degree_pairs);
    let mut classes = colors.iter().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut outs: Vec<usize> = d.out_neighbors(v).iter().map(|u| colors[u]).collect();
                let mut ins: Vec<usize> = d.in_neighbors(v).iter().map(|u| colors[u]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colors[v], outs, ins)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        if next_classes == classes {
            return next;
        }
        colors = next;
        classes = next_classes;
    }
}

/// Dense ranks of the values in `xs`, smallest value getting rank 0.
fn rank<T: Ord + Clone>(xs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = xs.to_vec();
    sorted.sort();
    sorted.dedup();
    xs.iter()
        .map(|x| sorted.binary_search(x).expect("value present"))
        .collect()
}

struct Search<'a> {
    d: &'a Digraph,
    n: usize,
    colors: Vec<usize>,
    block_color: Vec<usize>,
    perm: Vec<usize>,
    used: u64,
    bits: Vec<u8>,
    best_bits: Option<Vec<u8>>,
    best_perm: Vec<usize>,
    best_gen: u64,
    automorphisms: Vec<Vec<usize>>,
    uf: Vec<usize>,
    root_tried: Vec<usize>,
}

impl Search<'_> {
    /// `leading` means the path bits are already strictly below the best at
    /// some earlier depth, so no further comparisons are needed below here.
    fn dfs(&mut self, depth: usize, leading: bool) {
        if depth == self.n {
            if leading || self.best_bits.is_none() {
                self.best_bits = Some(self.bits.clone());
                self.best_perm = self.perm.clone();
                self.best_gen += 1;
            } else {
                debug_assert_eq!(Some(&self.bits), self.best_bits.as_ref());
                // A tie: the two labelings differ by an automorphism.
                let mut a = vec![0; self.n];
                for (pos, &v) in self.perm.iter().enumerate() {
                    a[self.best_perm[pos]] = v;
                }
                for (v, &image) in a.iter().enumerate() {
                    union(&mut self.uf, v, image);
                }
                self.automorphisms.push(a);
            }
            return;
        }
        let entry_gen = self.best_gen;
        let want = self.block_color[depth];
        for v in 0..self.n {
            if self.used >> v & 1 == 1 || self.colors[v] != want {
                continue;
            }
            if depth == 0 {
                let pruned = self
                    .root_tried
                    .clone()
                    .iter()
                    .any(|&u| find(&mut self.uf, u) == find(&mut self.uf, v));
                if pruned {
                    continue;
                }
            }
            // If a descendant replaced the best, this path is now its prefix,
            // so comparisons start from equality again.
            let leading = leading && self.best_gen == entry_gen;
            let start = self.bits.len();
            for j in 0..depth {
                let w = self.perm[j];
                self.bits.push(self.d.arc(v, w) as u8);
                self.bits.push(self.d.arc(w, v) as u8);
            }
            let child_leading = if leading {
                true
            } else {
                let best = self.best_bits.as_ref().expect("best set once not leading");
                match self.bits[start..].cmp(&best[start..self.bits.len()]) {
                    std::cmp::Ordering::Greater => {
                        self.bits.truncate(start);
                        continue;
                    }
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => false,
                }
            };
            self.perm.push(v);
            self.used |= 1 << v;
            self.dfs(depth + 1, child_leading);
            self.perm.pop();
            self.used &= !(1 << v);
            self.bits.truncate(start);
            if depth == 0 {
                self.root_tried.push(v);
            }
        }
    }
}

fn find(uf: &mut Vec<usize>, v: usize) -> usize {
    if uf[v] != v {
        let root = find(uf, uf[v]);
        uf[v] = root;
    }
    uf[v]
}

fn union(uf: &mut Vec<usize>, a: usize, b: usize) {
    let ra = find(uf, a);
    let rb = find(uf, b);
    if ra != rb {
        // Smaller index becomes the root, so orbit names are deterministic.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        uf[hi] = lo;
    }
}

/// One byte of order, then the adjacency matrix bits row-major, packed
/// most-significant-bit first.
fn encode(d: &Digraph) -> CanonicalForm {
    let n = d.order();
    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for r in 0..n {
        for c in 0..n {
            acc = acc << 1 | (r != c && d.arc(r, c)) as u8;
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    CanonicalForm(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use std::collections::BTreeSet;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs).unwrap()
    }

    /// Every labeled digraph of order `n`, by arc-subset mask.
    fn all_labeled(n: usize) -> Vec<Digraph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let arcs: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                Digraph::new(n, &arcs).unwrap()
            })
            .collect()
    }

    fn relabel(g: &Digraph, perm: &[usize]) -> Digraph {
        let arcs: Vec<(usize, usize)> = g
            .arcs()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Digraph::new(g.order(), &arcs).unwrap()
    }

    #[test]
    fn two_vertex_digraphs_fall_into_three_classes() {
        let forms: BTreeSet<CanonicalForm> =
            all_labeled(2).iter().map(|g| g.canonical_form()).collect();
        assert_eq!(forms.len(), 3);
    }

    #[test]
    fn reversed_arc_is_isomorphic_but_digon_is_not() {
        let arc = d(2, &[(0, 1)]);
        let rev = d(2, &[(1, 0)]);
        let digon = d(2, &[(0, 1), (1, 0)]);
        assert!(arc.are_isomorphic(&rev));
        assert!(!arc.are_isomorphic(&digon));
    }

    #[test]
    fn cyclic_and_transitive_triangles_differ() {
        let cycle = d(3, &[(0, 1), (1, 2), (2, 0)]);
        let transitive = d(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(!cycle.are_isomorphic(&transitive));
        assert!(cycle.are_isomorphic(&d(3, &[(2, 1), (1, 0), (0, 2)])));
    }

    #[test]
    fn form_is_invariant_under_every_relabeling_at_order_3() {
        for g in all_labeled(3) {
            let form = g.canonical_form();
            for perm in (0..3).permutations(3) {
                assert_eq!(relabel(&g, &perm).canonical_form(), form);
            }
        }
    }

    #[test]
    fn canonical_representative_is_a_fixed_point() {
        for g in all_labeled(3) {
            let c = g.canonical();
            assert_eq!(c.canonical(), c);
            assert_eq!(c.canonical_form(), g.canonical_form());
            assert!(c.are_isomorphic(&g));
        }
    }

    #[test]
    fn distinct_forms_count_classes_at_order_3() {
        let forms: BTreeSet<CanonicalForm> =
            all_labeled(3).iter().map(|g| g.canonical_form()).collect();
        assert_eq!(forms.len(), 16);
    }

    #[test]
    fn labeling_maps_original_to_canonical_positions() {
        let g = d(3, &[(2, 0)]);
        let c = canonicalize(&g);
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    assert_eq!(g.arc(u, v), c.digraph.arc(c.labeling[u], c.labeling[v]));
                }
            }
        }
    }

    #[test]
    fn automorphism_orbits() {
        // A digon: swapping the endpoints is an automorphism.
        let c = canonicalize(&d(2, &[(0, 1), (1, 0)]));
        assert!(c.same_orbit(0, 1));
        // A single arc on two vertices has a trivial group.
        let c = canonicalize(&d(2, &[(0, 1)]));
        assert!(!c.same_orbit(0, 1));
        // The empty digraph on 4 vertices is fully symmetric.
        let c = canonicalize(&Digraph::empty(4).unwrap());
        assert!((1..4).all(|v| c.same_orbit(0, v)));
        // Discovered automorphisms are genuine.
        let g = d(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        let c = canonicalize(&g);
        for a in &c.automorphisms {
            for u in 0..4 {
                for v in 0..4 {
                    if u != v {
                        assert_eq!(g.arc(u, v), g.arc(a[u], a[v]));
                    }
                }
            }
        }
    }

    #[test]
    fn empty_and_singleton_forms() {
        let e = Digraph::empty(0).unwrap();
        assert_eq!(e.canonical_form().as_bytes(), &[0]);
        let s = Digraph::empty(1).unwrap();
        assert_eq!(s.canonical_form().as_bytes(), &[1, 0]);
        assert!(!e.are_isomorphic(&s));
    }
}
