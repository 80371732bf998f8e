//! End-to-end tests of the binary: exit codes, JSON schemas, determinism,
//! batch mode.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

const NUEVE: &str = r#"{"sign":1,"factors":[[7,6],[13,6],[19,8]]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclic-shape"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_temp(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn build_text_matches_golden_grid() {
    let out = run(&["build", "--m", "9", "--disc", NUEVE]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first_row: Vec<&str> = text.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(
        first_row,
        ["2318", "-1159", "570", "-1140", "570", "570", "-1140", "570"]
    );
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn build_cubic_text() {
    let out = run(&["build", "--m", "3", "--disc-int", "49"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "14 -7\n-7 14\n");
}

#[test]
fn build_json_round_trips() {
    let out = run(&["build", "--m", "9", "--disc", NUEVE, "--format", "json", "--full"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["m"], 9);
    assert_eq!(v["disc"]["factors"][2][0], 19);
    assert_eq!(v["trace_zero"]["dim"], 8);
    assert_eq!(v["trace_zero"]["rows"][0][0], "2318");
    assert_eq!(v["full_trace"]["dim"], 9);
    // matrix JSON parses back through the library
    let m = cyclic_shape::IntMatrix::from_json(&v["trace_zero"]).unwrap();
    assert_eq!(m.dim(), 8);
    // disc JSON round-trips
    let d: cyclic_shape::FactoredDiscriminant =
        serde_json::from_value(v["disc"].clone()).unwrap();
    assert_eq!(d.value().to_string(), "9644443241083841416681");
}

#[test]
fn deterministic_output() {
    let a = run(&["build", "--m", "9", "--disc", NUEVE, "--format", "json"]);
    let b = run(&["build", "--m", "9", "--disc", NUEVE, "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    // 0: success
    assert_eq!(run(&["build", "--m", "3", "--disc-int", "49"]).status.code(), Some(0));
    // 2: domain validation (wild ramification), machine-readable error
    let out = run(&["build", "--m", "9", "--disc", r#"{"sign":1,"factors":[[3,6],[7,6]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["kind"], "wild_ramification");
    assert_eq!(v["error"]["prime"], 3);
    // 3: parse failure (invalid JSON)
    let out = run(&["build", "--m", "9", "--disc", "{not json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["kind"], "parse_failure");
    // 3: raw integer above the factorization bound
    let out = run(&["build", "--m", "9", "--disc-int", "9644443241083841416681"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["kind"], "factor_bound_exceeded");
    // 1: check on a tampered comparison fixture
    let dir = tempfile::tempdir().unwrap();
    let built = run(&["build", "--m", "9", "--disc", NUEVE, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&built)).unwrap();
    let mut tampered = v["trace_zero"].clone();
    tampered["rows"][0][0] = serde_json::Value::from("2319");
    let path = write_temp(dir.path(), "tampered.json", &tampered.to_string());
    let out = run(&["check", "--m", "9", "--disc", NUEVE, "--compare", &path]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL golden identity"), "{text}");
}

#[test]
fn check_reports_five_invariants() {
    let out = run(&["check", "--m", "9", "--disc", NUEVE]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    // m = 2, disc = 21: det(2d) = 42 = m*d
    let out = run(&["check", "--m", "2", "--disc-int", "21"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn coeffs_schema() {
    let out = run(&["coeffs", "--m", "9", "--disc", NUEVE, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["a"]["1"], "1729");
    assert_eq!(v["a"]["3"], "-570");
    assert_eq!(v["a"]["9"], "-2");
    assert_eq!(v["provenance"]["9"], "normalized");
    // permissive warning for the literal a_m on the quintic
    let out = run(&[
        "coeffs", "--m", "5", "--disc", r#"{"sign":1,"factors":[[11,4]]}"#,
        "--mode", "permissive",
    ]);
    let text = stdout(&out);
    assert!(text.contains("literal a_5 = -10 differs from normalized a_5 = -2"), "{text}");
}

#[test]
fn isometry_and_shape_flow() {
    let dir = tempfile::tempdir().unwrap();
    // external fixture: unimodular conjugate of A(49) for the cubic
    let left = r#"{"dim":2,"rows":[["14","-7"],["-7","14"]]}"#;
    // U = [[1,1],[0,1]]: U^T G U = [[14,7],[7,14]]
    let conj = r#"{"dim":2,"rows":[["14","7"],["7","14"]]}"#;
    let left_path = write_temp(dir.path(), "left.json", left);
    let conj_path = write_temp(dir.path(), "conj.json", conj);
    let out = run(&["isometry", "--left", &left_path, "--right", &conj_path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "isometric");
    assert!(v["witness"]["rows"].is_array());

    // disc-built left vs matrix fixture via --compare
    let out = run(&["isometry", "--m", "3", "--disc-int", "49", "--compare", &conj_path]);
    assert_eq!(out.status.code(), Some(0));

    // two cubic discriminants 49 and 169: not isometric, equal shape
    let d169 = write_temp(dir.path(), "d169.json", r#"{"sign":1,"factors":[[13,2]]}"#);
    let out = run(&["isometry", "--m", "3", "--disc-int", "49", "--compare", &d169]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not_isometric"));
    assert!(stdout(&out).contains("determinant 147 != 507"));
    let out = run(&["shape", "--m", "3", "--disc-int", "49", "--compare", &d169, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "equal_shape");
    assert_eq!(v["scale"]["num"], "13");
    assert_eq!(v["scale"]["den"], "7");

    // shape rejects indefinite forms with exit 2
    let neg = write_temp(dir.path(), "neg.json", r#"{"dim":1,"rows":[["-6"]]}"#);
    let out = run(&["shape", "--left", &neg, "--right", &neg]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_dimension_cap() {
    let dir = tempfile::tempdir().unwrap();
    // dim 13 identity-like lattice: above the default cap 12
    let rows: Vec<Vec<String>> = (0..13)
        .map(|i| (0..13).map(|j| if i == j { "2".into() } else { "0".into() }).collect())
        .collect();
    let big = serde_json::json!({"dim": 13, "rows": rows}).to_string();
    let path = write_temp(dir.path(), "big.json", &big);
    let out = run(&["isometry", "--left", &path, "--right", &path]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["kind"], "dimension_cap_exceeded");
    // override via env, clamped at 16
    let out = bin()
        .args(["isometry", "--left", &path, "--right", &path])
        .env("CYCLIC_SHAPE_MAX_DIM", "14")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn batch_mode() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = [
        format!(r#"{{"cmd":"coeffs","m":9,"disc":{NUEVE}}}"#),
        r#"{"cmd":"build","m":3,"disc_int":"49"}"#.to_string(),
        r#"{"cmd":"build","m":9,"disc":{"sign":1,"factors":[[3,6],[7,6]]}}"#.to_string(),
    ]
    .join("\n");
    let path = write_temp(dir.path(), "jobs.jsonl", &jobs);
    let out = run(&["--batch", &path]);
    // outputs in input order, one JSON line each; exit carries the first failure
    assert_eq!(out.status.code(), Some(2));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["a"]["1"], "1729");
    assert_eq!(lines[1]["trace_zero"]["rows"][0][0], "14");
    assert_eq!(lines[2]["error"]["kind"], "wild_ramification");
}
