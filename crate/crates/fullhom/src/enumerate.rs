//! Isomorph-free generation, obstruction catalogs, and exhaustive checks.
//!
//! Digraphs are generated one isomorphism class at a time by canonical
//! augmentation: every canonical digraph on `n-1` vertices is extended by one
//! new vertex in every way, a child is kept only if deleting its canonically
//! chosen last vertex leads back to the parent it came from, and extension
//! patterns are considered once per orbit of the parent's automorphism
//! group. Each class of order `n` then arises from exactly one parent and
//! one pattern orbit, so no global seen-set is needed.
//!
//! The obstruction search runs the same augmentation but only ever extends
//! partitionable digraphs, which is justified by a short argument: induced
//! subdigraphs of partitionable digraphs are partitionable (restrict the
//! assignment), so every proper induced subdigraph of a minimal obstruction
//! is partitionable, and any digraph that strictly contains a
//! non-partitionable proper induced subdigraph can neither be a minimal
//! obstruction nor sit inside one. Children that are neither partitionable
//! nor minimal are therefore discarded, and minimal obstructions themselves
//! are never extended.
//!
//! Work is split per parent across threads; results merge by canonical form,
//! so the output is identical for any thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonicalize, CanonicalForm};
use crate::digraph::{Digraph, ParseError};
use crate::partition::has_partition;
use crate::pattern::PatternMatrix;
use crate::triples;
use crate::twins::{self, HomogeneousKind};

/// All loopless digraphs of the given order up to isomorphism, as canonical
/// representatives in canonical-form order.
pub fn enumerate_digraphs(n: usize) -> Vec<Digraph> {
    let mut level = vec![Digraph::empty(0).expect("order zero")];
    for _ in 0..n {
        level = extend_level(&level);
    }
    level
}

/// One generation step: all classes of order `n+1` from all classes of
/// order `n`.
fn extend_level(parents: &[Digraph]) -> Vec<Digraph> {
    let chunks: Vec<Vec<(CanonicalForm, Digraph)>> =
        parents.par_iter().map(accepted_children).collect();
    let mut merged: BTreeMap<CanonicalForm, Digraph> = BTreeMap::new();
    for chunk in chunks {
        for (form, child) in chunk {
            let duplicate = merged.insert(form, child);
            debug_assert!(duplicate.is_none(), "each class must be generated once");
        }
    }
    merged.into_values().collect()
}

/// The canonical children of one canonical parent: each extension pattern is
/// taken once per automorphism orbit, and a child survives only if its
/// canonically deleted vertex is in the same orbit as the added one.
fn accepted_children(parent: &Digraph) -> Vec<(CanonicalForm, Digraph)> {
    let n = parent.order();
    assert!(n <= 16, "generation beyond order 17 is not supported");
    let parent_canon = canonicalize(parent);
    let auts = &parent_canon.automorphisms;
    let patterns = 1usize << (2 * n);
    let low = (1u64 << n) - 1;
    let mut visited = vec![false; patterns];
    let mut out = Vec::new();
    for idx in 0..patterns {
        if visited[idx] {
            continue;
        }
        // `idx` is the least pattern of its orbit; mark the whole orbit.
        visited[idx] = true;
        let mut stack = vec![idx];
        while let Some(cur) = stack.pop() {
            let (o, i) = ((cur >> n) as u64, cur as u64 & low);
            for a in auts {
                let img = (permute_mask(o, a) as usize) << n | permute_mask(i, a) as usize;
                if !visited[img] {
                    visited[img] = true;
                    stack.push(img);
                }
            }
        }
        let (out_mask, in_mask) = ((idx >> n) as u64, idx as u64 & low);
        let child = parent.with_appended_vertex(out_mask, in_mask);
        let canon = canonicalize(&child);
        let deleted = canon
            .labeling
            .iter()
            .position(|&pos| pos == n)
            .expect("some vertex takes the last position");
        if canon.same_orbit(n, deleted) {
            out.push((canon.form, canon.digraph));
        }
    }
    out
}

/// Applies a vertex permutation to a neighborhood bitmask.
fn permute_mask(mask: u64, a: &[usize]) -> u64 {
    let mut rest = mask;
    let mut image = 0u64;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        image |= 1 << a[j];
    }
    image
}

/// The minimal obstructions of a pattern matrix, up to a given order.
#[derive(Debug, Clone)]
pub struct ObstructionCatalog {
    matrix: PatternMatrix,
    ceiling: usize,
    by_order: BTreeMap<usize, Vec<Digraph>>,
    examined: usize,
}

impl ObstructionCatalog {
    pub fn matrix(&self) -> &PatternMatrix {
        &self.matrix
    }

    pub fn bound(&self) -> usize {
        self.matrix.bound()
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    /// Obstructions grouped by order; orders without obstructions are absent.
    pub fn by_order(&self) -> &BTreeMap<usize, Vec<Digraph>> {
        &self.by_order
    }

    pub fn counts_by_order(&self) -> BTreeMap<usize, usize> {
        self.by_order
            .iter()
            .map(|(&order, v)| (order, v.len()))
            .collect()
    }

    pub fn total(&self) -> usize {
        self.by_order.values().map(Vec::len).sum()
    }

    pub fn max_order(&self) -> Option<usize> {
        self.by_order.keys().next_back().copied()
    }

    /// Number of obstructions of order exactly `(k+1)(l+1)`.
    pub fn extremal_count(&self) -> usize {
        self.by_order.get(&self.bound()).map_or(0, Vec::len)
    }

    /// Canonical digraphs examined while building the catalog.
    pub fn examined(&self) -> usize {
        self.examined
    }

    pub fn to_document(&self) -> CatalogDocument {
        CatalogDocument {
            matrix: self.matrix.row_strings(),
            k: self.matrix.diagonal_zeros(),
            l: self.matrix.diagonal_ones(),
            bound: self.bound(),
            ceiling: self.ceiling,
            obstructions: self
                .by_order
                .iter()
                .flat_map(|(&order, ds)| {
                    ds.iter().map(move |d| CatalogEntry {
                        order,
                        rows: d.to_text().lines().skip(1).map(str::to_owned).collect(),
                    })
                })
                .collect(),
            counts_by_order: self.counts_by_order(),
            extremal_count: self.extremal_count(),
            generator_version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

/// Exhaustively catalogs the minimal obstructions of `m` up to `ceiling`
/// vertices. Only partitionable digraphs are ever extended; see the module
/// notes for why that loses nothing.
pub fn enumerate_minimal_obstructions(m: &PatternMatrix, ceiling: usize) -> ObstructionCatalog {
    let mut frontier = vec![Digraph::empty(0).expect("order zero")];
    let mut by_order = BTreeMap::new();
    let mut examined = 0usize;
    for order in 1..=ceiling {
        let children = extend_level(&frontier);
        examined += children.len();
        let classified: Vec<(Digraph, Verdict)> = children
            .into_par_iter()
            .map(|d| {
                let verdict = classify(&d, m);
                (d, verdict)
            })
            .collect();
        let mut minimal = Vec::new();
        frontier = Vec::new();
        for (d, verdict) in classified {
            match verdict {
                Verdict::Partitionable => frontier.push(d),
                Verdict::Minimal => minimal.push(d),
                Verdict::Dead => {}
            }
        }
        if !minimal.is_empty() {
            by_order.insert(order, minimal);
        }
    }
    ObstructionCatalog {
        matrix: m.clone(),
        ceiling,
        by_order,
        examined,
    }
}

enum Verdict {
    Partitionable,
    Minimal,
    Dead,
}

fn classify(d: &Digraph, m: &PatternMatrix) -> Verdict {
    if has_partition(d, m) {
        return Verdict::Partitionable;
    }
    let minimal = d.vertices().all(|v| {
        let (rest, _) = d.delete_vertex(v).expect("vertex in range");
        has_partition(&rest, m)
    });
    if minimal {
        Verdict::Minimal
    } else {
        Verdict::Dead
    }
}

/// Number of minimal obstructions of order exactly `(k+1)(l+1)`.
pub fn extremal_census(m: &PatternMatrix) -> usize {
    enumerate_minimal_obstructions(m, m.bound()).extremal_count()
}

/// The catalog as a plain serializable document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDocument {
    pub matrix: Vec<String>,
    pub k: usize,
    pub l: usize,
    pub bound: usize,
    pub ceiling: usize,
    pub obstructions: Vec<CatalogEntry>,
    pub counts_by_order: BTreeMap<usize, usize>,
    pub extremal_count: usize,
    pub generator_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub order: usize,
    pub rows: Vec<String>,
}

impl CatalogDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

impl CatalogEntry {
    pub fn to_digraph(&self) -> Result<Digraph, ParseError> {
        let mut text = self.order.to_string();
        text.push('\n');
        for row in &self.rows {
            text.push_str(row);
            text.push('\n');
        }
        Digraph::parse(&text)
    }
}

/// The outcome of one exhaustive sweep.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub property: &'static str,
    /// Inclusive range of digraph orders covered.
    pub orders: (usize, usize),
    /// Instances the property was checked on.
    pub instances: usize,
    /// Canonical digraphs where the property failed.
    pub violations: Vec<Digraph>,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    /// Stable text, free of timings so identical runs print identically.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property {}", self.property)?;
        writeln!(f, "orders {}..{}", self.orders.0, self.orders.1)?;
        writeln!(f, "instances {}", self.instances)?;
        writeln!(f, "violations {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "violation")?;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("ceiling {ceiling} is below the bound {bound}")]
pub struct CeilingTooLow {
    pub ceiling: usize,
    pub bound: usize,
}

/// Searches up to `ceiling` for minimal obstructions larger than the bound
/// `(k+1)(l+1)`. The theory says there are none; a violation would be an
/// obstruction with more than `(k+1)(l+1)` vertices.
pub fn verify_bound(
    m: &PatternMatrix,
    ceiling: usize,
) -> Result<VerificationReport, CeilingTooLow> {
    let bound = m.bound();
    if ceiling < bound {
        return Err(CeilingTooLow { ceiling, bound });
    }
    let start = Instant::now();
    let catalog = enumerate_minimal_obstructions(m, ceiling);
    let violations: Vec<Digraph> = catalog
        .by_order()
        .range(bound + 1..)
        .flat_map(|(_, ds)| ds.iter().cloned())
        .collect();
    Ok(VerificationReport {
        property: "obstruction-bound",
        orders: (1, ceiling),
        instances: catalog.examined(),
        violations,
        wall_time: start.elapsed(),
    })
}

/// Checks, over every point-determining digraph up to `max_n`, that a
/// removable vertex exists, that some vertex is red in no triple, and that
/// deleting any such vertex stays point-determining.
pub fn verify_removable_vertices(max_n: usize) -> VerificationReport {
    sweep_point_determining("removable-vertices", max_n, |d| {
        if twins::removable_vertex(d).is_err() {
            return false;
        }
        let Ok(free) = triples::red_free_vertices(d) else {
            return false;
        };
        if free.is_empty() {
            return false;
        }
        free.iter().all(|v| {
            let (rest, _) = d.delete_vertex(v).expect("vertex in range");
            twins::is_point_determining(&rest)
        })
    })
}

/// Checks, over every point-determining digraph up to `max_n`, that no pair
/// of triples breaks the intersection rule.
pub fn verify_triple_intersections(max_n: usize) -> VerificationReport {
    sweep_point_determining("triple-intersections", max_n, |d| {
        triples::triple_intersection_violations(d)
            .map(|v| v.is_empty())
            .unwrap_or(false)
    })
}

fn sweep_point_determining(
    property: &'static str,
    max_n: usize,
    check: impl Fn(&Digraph) -> bool + Sync,
) -> VerificationReport {
    let start = Instant::now();
    let mut level = vec![Digraph::empty(0).expect("order zero")];
    let mut instances = 0usize;
    let mut violations = Vec::new();
    for _ in 1..=max_n {
        level = extend_level(&level);
        let outcomes: Vec<Option<bool>> = level
            .par_iter()
            .map(|d| twins::is_point_determining(d).then(|| check(d)))
            .collect();
        for (d, outcome) in level.iter().zip(outcomes) {
            if let Some(ok) = outcome {
                instances += 1;
                if !ok {
                    violations.push(d.clone());
                }
            }
        }
    }
    VerificationReport {
        property,
        orders: (1, max_n),
        instances,
        violations,
        wall_time: start.elapsed(),
    }
}

/// Checks every obstruction in the catalog against the homogeneous-set
/// bounds: a homogeneous strong clique has at most `k+1` vertices and a
/// homogeneous independent set at most `l+1`.
pub fn verify_homogeneous_bounds(catalog: &ObstructionCatalog) -> VerificationReport {
    let start = Instant::now();
    let k = catalog.matrix().diagonal_zeros();
    let l = catalog.matrix().diagonal_ones();
    let all: Vec<&Digraph> = catalog.by_order().values().flatten().collect();
    let flags: Vec<bool> = all
        .par_iter()
        .map(|d| {
            twins::max_homogeneous(d, HomogeneousKind::StrongClique).0 <= k + 1
                && twins::max_homogeneous(d, HomogeneousKind::Independent).0 <= l + 1
        })
        .collect();
    let violations = all
        .iter()
        .zip(&flags)
        .filter(|(_, &ok)| !ok)
        .map(|(d, _)| (*d).clone())
        .collect();
    VerificationReport {
        property: "homogeneous-bounds",
        orders: (1, catalog.ceiling()),
        instances: all.len(),
        violations,
        wall_time: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn m(text: &str) -> PatternMatrix {
        PatternMatrix::parse(text).unwrap()
    }

    #[test]
    fn class_counts_at_small_orders() {
        assert_eq!(enumerate_digraphs(0).len(), 1);
        assert_eq!(enumerate_digraphs(1).len(), 1);
        assert_eq!(enumerate_digraphs(2).len(), 3);
        assert_eq!(enumerate_digraphs(3).len(), 16);
        assert_eq!(enumerate_digraphs(4).len(), 218);
    }

    #[test]
    fn generated_digraphs_are_canonical_and_sorted() {
        let level = enumerate_digraphs(3);
        let forms: Vec<CanonicalForm> = level.iter().map(|d| d.canonical_form()).collect();
        let mut sorted = forms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(forms, sorted);
        for d in &level {
            assert_eq!(&d.canonical(), d);
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let a = enumerate_digraphs(4);
        let b = enumerate_digraphs(4);
        assert_eq!(a, b);
    }

    #[test]
    fn one_part_independent_catalog() {
        let catalog = enumerate_minimal_obstructions(&m("1\n0\n"), 4);
        assert_eq!(catalog.counts_by_order(), BTreeMap::from([(2, 2)]));
        assert_eq!(catalog.extremal_count(), 2);
        let expected: BTreeSet<CanonicalForm> = [
            Digraph::new(2, &[(0, 1)]).unwrap(),
            Digraph::new(2, &[(0, 1), (1, 0)]).unwrap(),
        ]
        .iter()
        .map(|d| d.canonical_form())
        .collect();
        let got: BTreeSet<CanonicalForm> = catalog.by_order()[&2]
            .iter()
            .map(|d| d.canonical_form())
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn one_part_clique_catalog() {
        let catalog = enumerate_minimal_obstructions(&m("1\n1\n"), 4);
        assert_eq!(catalog.counts_by_order(), BTreeMap::from([(2, 2)]));
        let expected: BTreeSet<CanonicalForm> = [
            Digraph::empty(2).unwrap(),
            Digraph::new(2, &[(0, 1)]).unwrap(),
        ]
        .iter()
        .map(|d| d.canonical_form())
        .collect();
        let got: BTreeSet<CanonicalForm> = catalog.by_order()[&2]
            .iter()
            .map(|d| d.canonical_form())
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn mixed_two_part_catalog_stops_at_order_three() {
        let catalog = enumerate_minimal_obstructions(&m("2\n00\n11\n"), 5);
        assert_eq!(catalog.max_order(), Some(3));
        assert_eq!(catalog.extremal_count(), 0);
        assert_eq!(extremal_census(&m("2\n00\n11\n")), 0);
    }

    #[test]
    fn empty_matrix_has_the_single_vertex_obstruction() {
        let catalog = enumerate_minimal_obstructions(&m("0\n"), 2);
        assert_eq!(catalog.counts_by_order(), BTreeMap::from([(1, 1)]));
        assert_eq!(catalog.bound(), 1);
        assert_eq!(catalog.extremal_count(), 1);
    }

    #[test]
    fn census_examples() {
        assert_eq!(extremal_census(&m("1\n0\n")), 2);
        assert_eq!(extremal_census(&m("1\n1\n")), 2);
    }

    #[test]
    fn bound_verification_passes_small_matrices() {
        let report = verify_bound(&m("1\n0\n"), 3).unwrap();
        assert!(report.passed());
        assert_eq!(report.orders, (1, 3));
        assert!(report.instances > 0);
        let err = verify_bound(&m("1\n0\n"), 1).unwrap_err();
        assert_eq!(
            err,
            CeilingTooLow {
                ceiling: 1,
                bound: 2
            }
        );
    }

    #[test]
    fn removable_vertex_sweep_passes_at_order_four() {
        let report = verify_removable_vertices(4);
        assert!(report.passed(), "violations: {:?}", report.violations);
        assert!(report.instances > 0);
    }

    #[test]
    fn triple_intersection_sweep_passes_at_order_four() {
        let report = verify_triple_intersections(4);
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn homogeneous_bounds_hold_on_a_catalog() {
        let catalog = enumerate_minimal_obstructions(&m("2\n00\n11\n"), 5);
        let report = verify_homogeneous_bounds(&catalog);
        assert!(report.passed());
        assert_eq!(report.instances, catalog.total());
    }

    #[test]
    fn catalog_document_round_trips() {
        let catalog = enumerate_minimal_obstructions(&m("1\n0\n"), 3);
        let doc = catalog.to_document();
        assert_eq!(doc.k, 1);
        assert_eq!(doc.l, 0);
        assert_eq!(doc.bound, 2);
        assert_eq!(doc.extremal_count, 2);
        let json = doc.to_json();
        let back = CatalogDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        for entry in &back.obstructions {
            let d = entry.to_digraph().unwrap();
            assert_eq!(d.order(), entry.order);
        }
    }

    #[test]
    fn report_text_is_stable() {
        let report = VerificationReport {
            property: "obstruction-bound",
            orders: (1, 3),
            instances: 7,
            violations: vec![Digraph::new(2, &[(0, 1)]).unwrap()],
            wall_time: Duration::from_millis(5),
        };
        assert_eq!(
            report.to_string(),
            "property obstruction-bound\norders 1..3\ninstances 7\nviolations 1\nviolation\n2\n01\n00\n"
        );
    }
}
