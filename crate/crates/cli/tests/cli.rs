use std::io::Write;
use std::process::{Command, Output, Stdio};

fn blowup(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_blowup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = blowup(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const AXES: &str = r#"{"generators": [
    {"id": "A1", "offset": [0, 0, 0], "directions": [[1, 0, 0]]},
    {"id": "A2", "offset": [0, 0, 0], "directions": [[0, 1, 0]]},
    {"id": "A3", "offset": [0, 0, 0], "directions": [[0, 0, 1]]}
]}"#;

fn axes() -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("axes.json");
    std::fs::write(&path, AXES).unwrap();
    stdout(&["build", "linear", "--space", "affine", "--dim", "3", "--generators", path.to_str().unwrap()], "")
}

#[test]
fn kapranov_poincare_pipeline() {
    let arr = stdout(&["build", "kapranov", "--n", "2"], "");
    assert_eq!(stdout(&["poincare"], &arr), "1 + 5 t^2 + t^4\n");
}

#[test]
fn axes_verify_passes() {
    let out = blowup(&["verify"], &axes());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("PASS stage-telescoping"));
}

#[test]
fn axes_hodge_and_stages() {
    let arr = axes();
    assert_eq!(stdout(&["hodge"], &arr), "uv + 4 (uv)^2 + (uv)^3\n");
    assert_eq!(stdout(&["hodge", "--mode", "bruteforce"], &arr), "uv + 4 (uv)^2 + (uv)^3\n");
    assert_eq!(stdout(&["hodge", "--stage", "-1"], &arr), "(uv)^3\n");
    assert_eq!(stdout(&["complement"], &arr), "2 - 3 uv + (uv)^3\n");
    assert_eq!(stdout(&["transform", "--element", "A1", "--stage", "0"], &arr), "uv\n");
    assert_eq!(stdout(&["exc-divisor", "--element", "A1", "--stage", "1"], &arr), "uv + (uv)^2\n");
}

#[test]
fn nonregular_chow_refused() {
    // a point on a line in P^2: the point is not an intersection of maximal strata
    let gens = r#"{"generators": [
        {"id": "L", "points": [[1, 0, 0], [0, 1, 0]]},
        {"id": "p", "points": [[1, 0, 0]]}
    ]}"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gens.json");
    std::fs::write(&path, gens).unwrap();
    let arr = stdout(&["build", "linear", "--space", "projective", "--dim", "2", "--generators", path.to_str().unwrap()], "");
    let arr_path = dir.path().join("arr.json");
    std::fs::write(&arr_path, &arr).unwrap();
    let out = blowup(&["chow", "--arr", arr_path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
    let tainted = stdout(&["chow", "--allow-nonregular", "--arr", arr_path.to_str().unwrap()], "");
    assert!(tainted.contains("taint:"));
}

#[test]
fn chow_json_and_hilbert() {
    let arr = stdout(&["build", "kapranov", "--n", "2"], "");
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "chow", "--hilbert"], &arr)).unwrap();
    assert_eq!(doc["variables"].as_array().unwrap().len(), 11);
    assert_eq!(doc["meta"]["regular"], true);
    assert_eq!(doc["hilbert"]["coefficients"], serde_json::json!(["1", "5", "1"]));
    let text = stdout(&["chow", "--hilbert", "--dump-basis"], &arr);
    assert!(text.ends_with("hilbert: [1, 5, 1]\n"));
    assert!(text.contains("groebner basis:"));
}

#[test]
fn diagonal_with_inline_hodge() {
    let arr = stdout(&["build", "diagonal", "--n", "3", "--dim-x", "1", "--hodge-x", "1,1"], "");
    assert_eq!(stdout(&["hodge"], &arr), "1 + 4 uv + 4 (uv)^2 + (uv)^3\n");
    let json_terms = stdout(&["build", "diagonal", "--n", "3", "--dim-x", "1", "--hodge-x", r#"[[0,0,1],[1,1,"1"]]"#], "");
    assert_eq!(arr, json_terms);
}

#[test]
fn nerve_output() {
    let arr = stdout(&["build", "kapranov", "--n", "1"], "");
    assert_eq!(stdout(&["nerve"], &arr), "S1\nS2\nS3\n");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&["nerve", "--format", "json"], &arr)).unwrap();
    assert_eq!(doc["vertices"], serde_json::json!(["S1", "S2", "S3"]));
}

#[test]
fn maps_hodge_is_flagged() {
    let text = stdout(&["maps-hodge", "--n", "1", "--d", "2"], "");
    assert!(text.starts_with("EXPERIMENTAL"));
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&["maps-hodge", "--n", "1", "--d", "2", "--format", "json"], "")).unwrap();
    assert_eq!(doc["experimental"], true);
}

#[test]
fn deterministic_output() {
    let a = stdout(&["build", "diagonal", "--n", "4", "--dim-x", "2"], "");
    let b = stdout(&["build", "diagonal", "--n", "4", "--dim-x", "2"], "");
    assert_eq!(a, b);
    assert_eq!(stdout(&["--format", "json", "hodge"], &a), stdout(&["--format", "json", "hodge"], &b));
}

#[test]
fn exit_codes() {
    assert_eq!(blowup(&["poincare"], "not json").status.code(), Some(4));
    assert_eq!(blowup(&["poincare", "--arr", "/nonexistent/arr.json"], "").status.code(), Some(4));
    assert_eq!(blowup(&["frobnicate"], "").status.code(), Some(4));
    assert_eq!(blowup(&["--help"], "").status.code(), Some(0));
    assert_eq!(blowup(&["build", "kapranov", "--n", "0"], "").status.code(), Some(4));

    let arr = stdout(&["build", "kapranov", "--n", "2"], "");
    assert_eq!(blowup(&["transform", "--element", "S99", "--stage", "0"], &arr).status.code(), Some(4));

    // a stratum whose dimension is not below the ambient one
    let bad = arr.replacen("\"dim\": 0", "\"dim\": 2", 1);
    assert_ne!(bad, arr);
    let out = blowup(&["hodge"], &bad);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    let kap4 = stdout(&["build", "kapranov", "--n", "4"], "");
    let out = blowup(&["poincare"], &kap4);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not closed under intersection"));

    let maps = stdout(&["build", "maps", "--n", "1", "--d", "2"], "");
    assert_eq!(blowup(&["chow"], &maps).status.code(), Some(3));
}

#[test]
fn theorem_only_relations() {
    let gens = r#"{"generators": [
        {"id": "P", "points": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]},
        {"id": "L", "points": [[1, 0, 0, 0, 0], [0, 0, 0, 1, 0]]}
    ]}"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gens.json");
    std::fs::write(&path, gens).unwrap();
    let arr = stdout(&["build", "linear", "--space", "projective", "--dim", "4", "--generators", path.to_str().unwrap()], "");
    assert!(stdout(&["chow", "--hilbert"], &arr).ends_with("hilbert: [1, 4, 6, 4, 1]\n"));
    assert!(stdout(&["chow", "--hilbert", "--theorem-only"], &arr).ends_with("hilbert: [1, 4, 7, 6, 1]\n"));
    assert_eq!(stdout(&["poincare"], &arr), "1 + 4 t^2 + 6 t^4 + 4 t^6 + t^8\n");
}
