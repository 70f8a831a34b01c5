use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sp3geom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const ORIGIN: &str = r#"{"u":"1","X":["0","0","0","0","0","0"],"Y":["0","0","0","0","0","0"],"z":"0"}"#;
const CANONICAL_LINE: &str = r#"{"axis":[[0,1,0,0,0,0],[0,0,1,0,0,0]]}"#;

#[test]
fn classify_examples() {
    let o = run(&["classify", ORIGIN]);
    assert!(o.status.success());
    assert_eq!(json(&o)["orbit"], "Sigma");
    assert_eq!(json(&o)["grad_zero"], true);

    let o = run(&["classify", r#"{"u":0,"X":[0,0,0,0,0,0],"Y":[0,1,0,0,0,1],"z":1}"#]);
    assert_eq!(json(&o)["orbit"], "FMinusOmega");
    assert_eq!(json(&o)["F"], "0");

    let o = run(&["classify", r#"{"u":1,"X":[0,0,0,0,0,0],"Y":[0,0,0,0,0,0],"z":1}"#]);
    assert_eq!(json(&o)["orbit"], "Generic");
    assert_eq!(json(&o)["F"], "1");
}

#[test]
fn malformed_input_exits_with_three() {
    assert_eq!(run(&["classify", r#"{"u":"1"}"#]).status.code(), Some(3));
    assert_eq!(run(&["classify", "{not json"]).status.code(), Some(3));
    assert_eq!(run(&["classify", "/nonexistent/point.json"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--suite", "everything"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn classify_reads_stdin() {
    let o = run_stdin(&["classify", "-"], ORIGIN);
    assert!(o.status.success());
    assert_eq!(json(&o)["orbit"], "Sigma");
}

#[test]
fn projection_from_the_canonical_line() {
    // exp of diag(1, 1, 1): adjugate row (1, 0, 0), determinant 1
    let p = r#"{"u":1,"X":[1,0,0,1,0,1],"Y":[1,0,0,1,0,1],"z":1}"#;
    let o = run(&["project", "--line", CANONICAL_LINE, "--point", p]);
    assert!(o.status.success());
    assert_eq!(json(&o)["image"], serde_json::json!(["1", "0", "0", "1"]));

    let o = run(&["project", "--line", CANONICAL_LINE, "--point", ORIGIN]);
    assert!(o.status.success());
    assert_eq!(json(&o)["error"], "base_locus");

    let skew = r#"{"axis":[[1,0,0,0,0,0],[0,0,0,1,0,0]]}"#;
    assert_eq!(run(&["project", "--line", skew, "--point", ORIGIN]).status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "core", "--trials", "0"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["checks"], serde_json::json!([]));

    let o = run(&["verify", "--suite", "projection", "--seed", "7", "--trials", "20"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["seed"], 7);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn section_pipeline() {
    let dir = std::env::temp_dir().join(format!("sp3geom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("section.json");
    let path = path.to_str().unwrap();
    assert!(run(&["section", "new", "--seed", "1", "--out", path]).status.success());

    let o = run(&["section", "dual-quartic", "--section", path]);
    assert!(o.status.success());
    let q = json(&o);
    assert_eq!(q["smooth"], true);
    assert_eq!(q["form"]["deg"], 4);
    assert!(q["form"]["coeffs"].as_object().unwrap().len() <= 15);

    let text = std::fs::read_to_string(path).unwrap();
    let o = run_stdin(&["section", "dual-quartic"], &text);
    assert_eq!(json(&o), q);

    let args = ["section", "verify", "--section", path, "--checks", "fibration", "--points", "20"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    let (mut ra, mut rb) = (json(&a), json(&b));
    assert_eq!(ra["precision"], 60);
    assert!(ra["checks"].as_array().unwrap().iter().any(|c| c["name"] == "fibration" && c["status"] == "pass"));
    ra["wall_time_ms"] = Value::Null;
    rb["wall_time_ms"] = Value::Null;
    assert_eq!(ra, rb);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn section_through_a_line_passes_the_line_check() {
    let o = run(&["section", "new", "--seed", "5", "--line", CANONICAL_LINE]);
    assert!(o.status.success());
    let sec = String::from_utf8(o.stdout).unwrap();
    let o = run_stdin(&["section", "verify", "--checks", "line-section", "--points", "6", "--prec", "40"], &sec);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn degenerate_section_fails_with_two() {
    let y = |e: [i32; 6]| serde_json::json!({"u": 0, "X": [0, 0, 0, 0, 0, 0], "Y": e, "z": 0});
    let sec = serde_json::json!({"covectors": [y([1, 0, 0, 0, 0, 0]), y([0, 1, 0, 0, 0, 0]), y([0, 0, 0, 1, 0, 1])]});
    let o = run_stdin(&["section", "dual-quartic"], &sec.to_string());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["degenerate"], true);

    let o = run_stdin(&["section", "verify", "--points", "4"], &sec.to_string());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precision_out_of_range_is_an_input_error() {
    let o = run_stdin(&["section", "verify", "--prec", "5"], "{}");
    assert_eq!(o.status.code(), Some(3));
}
