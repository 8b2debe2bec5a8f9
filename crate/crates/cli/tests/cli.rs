use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SPLIT_G3: &str = r#"{"vertices":[{"id":"C1","pa":0},{"id":"C2","pa":0}],
  "edges":[{"u":"C1","v":"C2","multiplicity":4}]}"#;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: tempfile::tempdir().unwrap() }
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinlocus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = run(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    String::from_utf8(out.stderr).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("output re-parses")
}

#[test]
fn info_reports_genus_and_stability() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let out = ok(&["info", g.to_str().unwrap()]);
    assert!(out.starts_with("genus 3, stable"));

    let bad = f.write("elliptic.json", r#"{"vertices":[{"id":"E","pa":1}],"edges":[]}"#);
    let v = json(&["info", bad.to_str().unwrap()]);
    assert_eq!(v["result"]["genus"], 1);
    assert_eq!(v["result"]["stable"], false);
}

#[test]
fn bi_enumerates_split_curve() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let out = ok(&["bi", g.to_str().unwrap(), "--total", "42", "--enumerate"]);
    assert!(out.contains("5 multidegrees"));
    let v = json(&["bi", g.to_str().unwrap(), "--total", "42"]);
    assert_eq!(v["result"]["count"], 5);
    assert_eq!(v["result"]["multidegrees"][0], serde_json::json!([19, 23]));
}

#[test]
fn bi_single_vertex_has_one_row() {
    let f = Files::new();
    let g = f.write("one.json", r#"{"vertices":[{"id":"X","pa":3}],"edges":[]}"#);
    let v = json(&["bi", g.to_str().unwrap(), "--total", "42"]);
    assert_eq!(v["result"]["count"], 1);
}

#[test]
fn bi_reports_violation_with_exact_bounds() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let out = ok(&["bi", g.to_str().unwrap(), "--multidegree", "18,24"]);
    assert!(out.contains("Y={C1}  d_Y=18  m_Y=19  m_Y+k_Y=23"), "{out}");

    let v = json(&["bi", g.to_str().unwrap(), "--total", "42", "--multidegree", "18,24"]);
    assert_eq!(v["result"]["satisfied"], false);
    assert_eq!(v["result"]["violations"][0]["subcurve"], serde_json::json!(["C1"]));
    assert_eq!(v["result"]["violations"][0]["m_Y"], "19");
}

#[test]
fn rationals_print_as_fractions() {
    let f = Files::new();
    // genus 2 with two elliptic tails: m_Y = d/2 - 1/2
    let g = f.write(
        "tails.json",
        r#"{"vertices":[{"id":"A","pa":1},{"id":"B","pa":1}],"edges":[{"u":"A","v":"B","multiplicity":1}]}"#,
    );
    let v = json(&["bi", g.to_str().unwrap(), "--multidegree", "0,4"]);
    assert_eq!(v["result"]["violations"][0]["m_Y"], "3/2");
}

#[test]
fn multidegree_length_mismatch_is_an_error() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let err = fails(&["bi", g.to_str().unwrap(), "--multidegree", "42"]);
    assert!(err.contains("1 entries but the graph has 2"), "{err}");
    fails(&["spin", g.to_str().unwrap(), "-t", "10", "--decide", "1,2,39"]);
}

#[test]
fn malformed_json_exits_nonzero() {
    let f = Files::new();
    let g = f.write("bad.json", "{\"vertices\": [");
    let err = fails(&["info", g.to_str().unwrap()]);
    assert!(err.starts_with("error: "), "{err}");

    let dup = f.write(
        "dup.json",
        r#"{"vertices":[{"id":"A","pa":0},{"id":"B","pa":0}],
            "edges":[{"u":"A","v":"B","multiplicity":2},{"u":"B","v":"A","multiplicity":2}]}"#,
    );
    fails(&["info", dup.to_str().unwrap()]);
    fails(&["info", f.dir.path().join("missing.json").to_str().unwrap()]);
}

#[test]
fn spin_locus_on_split_curve() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let v = json(&["spin", g.to_str().unwrap(), "-t", "10", "--locus"]);
    assert_eq!(v["result"]["count"], 5);
    assert_eq!(v["result"]["fiber_components"], 5);
}

#[test]
fn spin_decide_prints_witness() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let out = ok(&["spin", g.to_str().unwrap(), "-t", "10", "--decide", "19,23"]);
    assert!(out.contains("C1-C2: s=4 sigma=(0,4)"), "{out}");

    // BI failure is an error, not a "not met"
    fails(&["spin", g.to_str().unwrap(), "-t", "10", "--decide", "18,24"]);
}

#[test]
fn spin_split_curve_table() {
    let v = json(&["spin", "-t", "10", "--split-curve", "-g", "3"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    let mut s: Vec<i64> = rows.iter().map(|r| r["s"].as_i64().unwrap()).collect();
    s.dedup();
    assert_eq!(s, vec![0, 2, 4]);
    assert_eq!(
        v["result"]["bidegrees"],
        serde_json::json!([[19, 23], [20, 22], [21, 21], [22, 20], [23, 19]])
    );
}

#[test]
fn twist_below_ten_needs_override() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    fails(&["spin", g.to_str().unwrap(), "-t", "9", "--locus"]);
    let out = run(&["spin", g.to_str().unwrap(), "-t", "9", "--unsafe-t", "--locus"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn spin_blowups_report() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let b = f.write("b.json", r#"{"s":[{"u":"C1","v":"C2","count":2}]}"#);
    let v = json(&["spin", g.to_str().unwrap(), "-t", "10", "--blowups", b.to_str().unwrap()]);
    assert_eq!(v["result"]["multidegree"], serde_json::json!([20, 20, 1, 1]));
    assert_eq!(v["result"]["git_stable"], true);
    assert_eq!(v["result"]["orbit_closed"], true);
    assert_eq!(v["result"]["basic_inequality"], true);

    let odd = f.write("odd.json", r#"{"s":[{"u":"C1","v":"C2","count":1}]}"#);
    let err = fails(&["spin", g.to_str().unwrap(), "-t", "10", "--blowups", odd.to_str().unwrap()]);
    assert!(err.contains("no spin structure"), "{err}");
}

#[test]
fn max_vertices_guard() {
    let f = Files::new();
    let g = f.write("split.json", SPLIT_G3);
    let b = f.write("b.json", r#"{"s":[{"u":"C1","v":"C2","count":2}]}"#);
    let err = fails(&["--max-vertices", "1", "bi", g.to_str().unwrap(), "--total", "42"]);
    assert!(err.contains("--max-vertices"), "{err}");
    // the expanded curve has four components
    fails(&["--max-vertices", "3", "spin", g.to_str().unwrap(), "-t", "10", "--blowups", b.to_str().unwrap()]);
}

#[test]
fn numerics_examples() {
    assert!(ok(&["numerics", "kdg", "-g", "3", "-d", "42"]).starts_with("1\n"));
    assert!(ok(&["numerics", "rank", "-g", "3"]).starts_with("4\n"));
    assert!(ok(&["numerics", "normalize", "-g", "3", "-d", "5"]).starts_with("41\n"));
    assert_eq!(json(&["numerics", "coarse", "-g", "3", "-d", "42"])["result"]["value"], false);
    fails(&["numerics", "kdg", "-g", "3"]);
    fails(&["numerics", "rank", "-g", "2"]);
}

#[test]
fn json_output_is_byte_identical_across_runs_and_jobs() {
    let f = Files::new();
    let g = f.write(
        "triangle.json",
        r#"{"vertices":[{"id":"A","pa":1},{"id":"B","pa":1},{"id":"C","pa":1}],
            "edges":[{"u":"A","v":"B","multiplicity":2},{"u":"B","v":"C","multiplicity":2},{"u":"A","v":"C","multiplicity":2}]}"#,
    );
    let p = g.to_str().unwrap();
    for args in [
        vec!["--json", "spin", p, "-t", "10", "--locus"],
        vec!["--json", "bi", p, "--total", "105"],
    ] {
        let first = ok(&args);
        assert_eq!(first, ok(&args));
        let mut parallel = vec!["--jobs", "4"];
        parallel.extend_from_slice(&args);
        assert_eq!(first, ok(&parallel));
    }
}
