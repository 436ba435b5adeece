//! End-to-end tests of the compiled `fullhom` binary: golden payloads, the
//! exit-status trichotomy, and byte-identical output across worker counts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fullhom::{
    enumerate_triples, validate_partition, verify_bound, verify_removable_vertices,
    verify_triple_intersections, CatalogDocument, Digraph, Partition, PatternMatrix,
};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fullhom"))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("process exited")
}

#[test]
fn partition_prints_one_based_parts() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "2\n01\n00\n");
    let m = write_file(dir.path(), "m.txt", "2\n00\n11\n");
    let out = bin()
        .args(["partition", "--digraph"])
        .arg(&d)
        .arg("--matrix")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "2 1\n");

    // The payload round-trips: 1-based parts back to a valid partition.
    let parts: Vec<usize> = stdout_of(&out)
        .split_whitespace()
        .map(|w| w.parse::<usize>().unwrap() - 1)
        .collect();
    let digraph: Digraph = "2\n01\n00\n".parse().unwrap();
    let matrix: PatternMatrix = "2\n00\n11\n".parse().unwrap();
    let partition = Partition::new(parts);
    assert!(validate_partition(&digraph, &matrix, &partition)
        .unwrap()
        .is_valid());
}

#[test]
fn partition_absence_is_status_one() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "2\n01\n00\n");
    let m = write_file(dir.path(), "m.txt", "1\n0\n");
    let out = bin()
        .args(["partition", "--digraph"])
        .arg(&d)
        .arg("--matrix")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 1);
    assert_eq!(stdout_of(&out), "NONE\n");
}

#[test]
fn hom_agrees_with_partition() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "2\n01\n00\n");
    let m = write_file(dir.path(), "m.txt", "2\n00\n11\n");
    let out = bin()
        .args(["hom", "--digraph"])
        .arg(&d)
        .arg("--matrix")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "2 1\n");
}

#[test]
fn hom_absence_on_a_nonadjacent_pair_into_a_loop() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "2\n00\n00\n");
    let m = write_file(dir.path(), "m.txt", "1\n1\n");
    let out = bin()
        .args(["hom", "--digraph"])
        .arg(&d)
        .arg("--matrix")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 1);
    assert_eq!(stdout_of(&out), "NONE\n");
}

#[test]
fn twins_classifies_every_pair() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "3\n010\n000\n110\n");
    let out = bin().args(["twins", "--digraph"]).arg(&d).output().unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "0 1 mixed-twins\n0 2 mixed-twins\n1 2 not-twins 0\n"
    );
}

#[test]
fn removable_prints_the_least_removable_vertex() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "3\n010\n000\n000\n");
    let out = bin()
        .args(["removable", "--digraph"])
        .arg(&d)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "2\n");
}

#[test]
fn removable_reports_none_on_a_non_point_determining_digraph() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "2\n00\n00\n");
    let out = bin()
        .args(["removable", "--digraph"])
        .arg(&d)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 1);
    assert_eq!(stdout_of(&out), "NONE\n");
    assert!(!out.stderr.is_empty());
}

#[test]
fn triples_lists_red_and_green_vertices() {
    let dir = TempDir::new().unwrap();
    let text = "3\n010\n000\n000\n";
    let d = write_file(dir.path(), "d.txt", text);
    let out = bin()
        .args(["triples", "--digraph"])
        .arg(&d)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "0 1 2\n1 0 2\n");

    // The payload round-trips against the library enumeration.
    let digraph: Digraph = text.parse().unwrap();
    let expected: Vec<String> = enumerate_triples(&digraph)
        .unwrap()
        .into_iter()
        .map(|t| format!("{} {} {}", t.red, t.green.0, t.green.1))
        .collect();
    let got: Vec<String> = stdout_of(&out).lines().map(str::to_owned).collect();
    assert_eq!(got, expected);
}

#[test]
fn obstructions_payload_round_trips_and_matches_the_output_file() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "m.txt", "1\n0\n");
    let saved = dir.path().join("catalog.json");
    let out = bin()
        .args(["obstructions", "--ceiling", "3", "--matrix"])
        .arg(&m)
        .arg("--output")
        .arg(&saved)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    let doc = CatalogDocument::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(doc.bound, 2);
    assert_eq!(doc.extremal_count, 2);
    assert_eq!(doc.counts_by_order, [(2, 2)].into_iter().collect());
    for entry in &doc.obstructions {
        assert_eq!(entry.to_digraph().unwrap().order(), entry.order);
    }
    assert_eq!(fs::read(&saved).unwrap(), out.stdout);
}

#[test]
fn obstructions_output_is_identical_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "m.txt", "2\n00\n11\n");
    let mut runs = Vec::new();
    for jobs in [None, Some("1"), Some("4")] {
        let mut cmd = bin();
        cmd.args(["obstructions", "--ceiling", "4", "--matrix"])
            .arg(&m);
        if let Some(j) = jobs {
            cmd.args(["--jobs", j]);
        }
        let out = cmd.output().unwrap();
        assert_eq!(code_of(&out), 0);
        runs.push(out.stdout);
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn verify_bound_report_matches_the_library_text() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "m.txt", "2\n00\n11\n");
    let out = bin()
        .args(["verify", "bound", "--ceiling", "5", "--matrix"])
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    let matrix: PatternMatrix = "2\n00\n11\n".parse().unwrap();
    let expected = verify_bound(&matrix, 5).unwrap().to_string();
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn verify_bound_defaults_to_one_above_the_bound() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "m.txt", "1\n0\n");
    let out = bin()
        .args(["verify", "bound", "--matrix"])
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("orders 1..3\n"));
}

#[test]
fn verify_bound_rejects_a_ceiling_below_the_bound() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "m.txt", "2\n00\n11\n");
    let out = bin()
        .args(["verify", "bound", "--ceiling", "1", "--matrix"])
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_sweeps_match_the_library_reports() {
    let sumner = bin()
        .args(["verify", "sumner", "--max-n", "3"])
        .output()
        .unwrap();
    assert_eq!(code_of(&sumner), 0);
    assert_eq!(stdout_of(&sumner), verify_removable_vertices(3).to_string());

    let triples = bin()
        .args(["verify", "triples", "--max-n", "3"])
        .output()
        .unwrap();
    assert_eq!(code_of(&triples), 0);
    assert_eq!(
        stdout_of(&triples),
        verify_triple_intersections(3).to_string()
    );
}

#[test]
fn census_prints_the_extremal_count() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "m.txt", "1\n1\n");
    let out = bin().args(["census", "--matrix"]).arg(&m).output().unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "2\n");
}

#[test]
fn unreadable_or_malformed_inputs_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "m.txt", "1\n0\n");
    let missing = dir.path().join("missing.txt");
    let out = bin()
        .args(["partition", "--digraph"])
        .arg(&missing)
        .arg("--matrix")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 2);
    assert!(!out.stderr.is_empty());

    let bad = write_file(dir.path(), "bad.txt", "2\n0a\n00\n");
    let out = bin()
        .args(["partition", "--digraph"])
        .arg(&bad)
        .arg("--matrix")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn zero_order_inputs_are_legal() {
    let dir = TempDir::new().unwrap();
    let d = write_file(dir.path(), "d.txt", "0\n");
    let m = write_file(dir.path(), "m.txt", "0\n");
    let out = bin()
        .args(["partition", "--digraph"])
        .arg(&d)
        .arg("--matrix")
        .arg(&m)
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "\n");
}
