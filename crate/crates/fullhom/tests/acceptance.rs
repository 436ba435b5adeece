//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single summary line; run `cargo test --test acceptance -- --nocapture`
//! to see all eight.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{
    all_labeled_digraphs, all_matrices_up_to_two_parts, brute_canonical_key,
    oracle_obstruction_catalog, oracle_solve,
};
use fullhom::{
    enumerate_digraphs, enumerate_minimal_obstructions, extremal_census, find_full_homomorphism,
    is_point_determining, solve_mpartition, validate_partition, verify_bound,
    verify_homogeneous_bounds, verify_removable_vertices, verify_triple_intersections,
    PatternMatrix,
};

fn summarize(number: usize, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {number} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number} ({name}) failed: {detail}");
}

fn mixed_two_part() -> PatternMatrix {
    "2\n00\n11\n".parse().expect("well-formed matrix")
}

#[test]
fn criterion_1_obstruction_bound_holds_for_all_small_matrices() {
    let mut bad = Vec::new();
    for m in all_matrices_up_to_two_parts() {
        let report = verify_bound(&m, m.bound() + 1).expect("ceiling above bound");
        if !report.passed() {
            bad.push((m.to_text(), report.violations.len()));
        }
    }
    summarize(
        1,
        "no oversized minimal obstruction, all matrices up to two parts",
        bad.is_empty(),
        &format!("{bad:?}"),
    );
}

#[test]
fn criterion_2_mixed_two_part_obstructions_stop_at_order_three() {
    let catalog = enumerate_minimal_obstructions(&mixed_two_part(), 5);
    let got = catalog.max_order();
    summarize(
        2,
        "mixed two-part matrix has largest minimal obstruction of order 3",
        got == Some(3),
        &format!("max order {got:?}, counts {:?}", catalog.counts_by_order()),
    );
}

#[test]
fn criterion_3_removable_vertices_exist_up_to_order_five() {
    let levels: Vec<Vec<fullhom::Digraph>> = (1..=5).map(enumerate_digraphs).collect();
    let class_count = levels.last().map(Vec::len);
    let pd_count: usize = levels
        .iter()
        .map(|level| level.iter().filter(|d| is_point_determining(d)).count())
        .sum();
    let report = verify_removable_vertices(5);
    let ok = report.passed() && report.instances == pd_count && class_count == Some(9608);
    summarize(
        3,
        "every point-determining digraph up to order 5 has removable vertices",
        ok,
        &format!(
            "passed {}, instances {} vs point-determining count {}, order-5 classes {:?}, violations {:?}",
            report.passed(),
            report.instances,
            pd_count,
            class_count,
            report.violations
        ),
    );
}

#[test]
fn criterion_4_triple_intersections_are_clean_up_to_order_five() {
    let report = verify_triple_intersections(5);
    let ok = report.passed() && report.orders == (1, 5) && report.instances > 0;
    summarize(
        4,
        "no triple intersection violations up to order 5",
        ok,
        &format!(
            "passed {}, instances {}, violations {:?}",
            report.passed(),
            report.instances,
            report.violations
        ),
    );
}

#[test]
fn criterion_5_homogeneous_bounds_hold_on_all_catalogs() {
    let mut bad = Vec::new();
    for m in all_matrices_up_to_two_parts() {
        let catalog = enumerate_minimal_obstructions(&m, m.bound() + 1);
        let report = verify_homogeneous_bounds(&catalog);
        if !report.passed() {
            bad.push((m.to_text(), report.violations.len()));
        }
    }
    summarize(
        5,
        "homogeneous sets in obstructions respect the k+1 and l+1 caps",
        bad.is_empty(),
        &format!("{bad:?}"),
    );
}

#[test]
fn criterion_6_solver_matches_the_exhaustive_oracle() {
    let matrices = all_matrices_up_to_two_parts();
    let mut checked = 0usize;
    let mut disagreements = 0usize;
    for n in 0..=4 {
        for d in all_labeled_digraphs(n) {
            for m in &matrices {
                let oracle = oracle_solve(&d, m);
                let got = solve_mpartition(&d, m);
                let agree = match (&got, &oracle) {
                    (None, None) => true,
                    (Some(p), Some(o)) => {
                        p.as_slice() == o.as_slice()
                            && validate_partition(&d, m, p)
                                .expect("well-formed partition")
                                .is_valid()
                    }
                    _ => false,
                } && find_full_homomorphism(&d, m).is_some() == oracle.is_some();
                checked += 1;
                if !agree {
                    disagreements += 1;
                }
            }
        }
    }
    let ok = disagreements == 0 && checked == 4166 * 18;
    summarize(
        6,
        "solver agrees with the exhaustive oracle on all labeled digraphs up to order 4",
        ok,
        &format!("{disagreements} disagreements over {checked} instances"),
    );
}

#[test]
fn criterion_7_pruned_enumeration_matches_generate_and_filter() {
    let counts: Vec<usize> = (2..=4)
        .map(|n| {
            all_labeled_digraphs(n)
                .iter()
                .map(brute_canonical_key)
                .collect::<BTreeSet<_>>()
                .len()
        })
        .collect();
    let counts_ok = counts == [3, 16, 218];
    let mut mismatched = Vec::new();
    for m in all_matrices_up_to_two_parts() {
        let oracle = oracle_obstruction_catalog(&m, 4);
        let pruned: BTreeMap<usize, BTreeSet<Vec<u64>>> = enumerate_minimal_obstructions(&m, 4)
            .by_order()
            .iter()
            .map(|(&order, ds)| (order, ds.iter().map(brute_canonical_key).collect()))
            .collect();
        if pruned != oracle {
            mismatched.push(m.to_text());
        }
    }
    summarize(
        7,
        "pruned catalogs equal generate-and-filter catalogs up to order 4",
        counts_ok && mismatched.is_empty(),
        &format!("class counts {counts:?}, mismatched matrices {mismatched:?}"),
    );
}

#[test]
fn criterion_8_extremal_census_values() {
    let independent = extremal_census(&"1\n0\n".parse().unwrap());
    let clique = extremal_census(&"1\n1\n".parse().unwrap());
    let mixed = extremal_census(&mixed_two_part());
    let ok = independent == 2 && clique == 2 && mixed == 0;
    summarize(
        8,
        "extremal obstruction counts for the three reference matrices",
        ok,
        &format!("got {independent}, {clique}, {mixed}; expected 2, 2, 0"),
    );
}
