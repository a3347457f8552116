use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn elemop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elemop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = elemop(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

const J2: &str = r#"{"rows":2,"cols":2,"entries":[["0","1"],["0","0"]]}"#;
const I2: &str = r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","1"]]}"#;
const FAMILY_A: &str = r#"{"rows":3,"cols":3,"entries":[[1,2,1],[3,0,1],[0,0,3]]}"#;
const FAMILY_B: &str = r#"{"rows":3,"cols":3,"entries":[[1,2,0],[3,0,0],[0,0,3]]}"#;

fn multiplication_op(a: &str, b: &str) -> String {
    format!(r#"{{"dim":2,"terms":[{{"a":{a},"b":{b}}}]}}"#)
}

#[test]
fn noncommuting_example_reports_cubic_relation() {
    let v = json_ok(&["examples", "--which", "3.1"]);
    assert_eq!(v["S_cubed_plus_S_zero"], Value::Bool(true));
    assert_eq!(v["v_report"]["nilpotent"], Value::Bool(false));
    assert_eq!(v["basis_images"].as_array().unwrap().len(), 4);
}

#[test]
fn parametric_example_defaults_and_rejects_bad_parameters() {
    let v = json_ok(&["examples", "--which", "3.2"]);
    assert_eq!(v["ab_equals_ba"], Value::Bool(true));
    assert_eq!(v["n_report"]["index"], 2);
    assert_eq!(v["v_report"]["nilpotent"], Value::Bool(true));
    assert_eq!(v["a_shift"]["lambda"], Value::Null);

    let other = json_ok(&["examples", "--which", "3.2", "--params", "2,1/2,5/2,0,5/2"]);
    assert_eq!(other["v_report"]["nilpotent"], Value::Bool(true));

    let bad = elemop(&["examples", "--which", "3.2", "--params", "1,2,3,0,4"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("a + b = k fails"));
    let malformed = elemop(&["examples", "--which", "3.2", "--params", "1,2,3"]);
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn nilpotent_from_file_and_inline() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "j2.json", J2);
    let v = json_ok(&["nilpotent", "--matrix", &path]);
    assert_eq!(
        v,
        serde_json::json!({"nilpotent": true, "index": 2, "witness": {"row": 0, "col": 1, "value": "1"}})
    );
    let inline = json_ok(&["nilpotent", "--matrix", J2]);
    assert_eq!(inline, v);
    let op = json_ok(&["nilpotent", "--op", &multiplication_op(J2, I2)]);
    assert_eq!(op["nilpotent"], Value::Bool(true));
    assert_eq!(op["index"], 2);
    let identity = json_ok(&["nilpotent", "--matrix", I2]);
    assert_eq!(identity["nilpotent"], Value::Bool(false));
}

#[test]
fn apply_and_superop_round_trip() {
    let dir = TempDir::new().unwrap();
    let op = write(dir.path(), "op.json", &multiplication_op(J2, I2));
    let x = write(
        dir.path(),
        "x.json",
        r#"{"rows":2,"cols":2,"entries":[["1","2"],["3/4","1+i"]]}"#,
    );
    let image = json_ok(&["apply", "--op", &op, "--x", &x]);
    assert_eq!(
        image,
        serde_json::json!({"rows": 2, "cols": 2, "entries": [["3/4", "1+1*i"], ["0", "0"]]})
    );

    let out = dir.path().join("super.json");
    let status = elemop(&["superop", "--op", &op, "--out", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let s: Value = serde_json::from_str(&text).unwrap();
    assert_eq!((s["rows"].as_u64(), s["cols"].as_u64()), (Some(4), Some(4)));
    // The written document is itself valid matrix input.
    let again = json_ok(&["nilpotent", "--matrix", out.to_str().unwrap()]);
    assert_eq!(again["index"], 2);
}

#[test]
fn criterion_checks() {
    let m = json_ok(&["check", "--theorem", "2.1", "--a", I2, "--b", I2]);
    assert_eq!(m["hypotheses_hold"], Value::Bool(false));
    assert_eq!(m["consistent"], Value::Bool(true));

    let shifts = json_ok(&["check", "--theorem", "2.3", "--a", FAMILY_A, "--b", FAMILY_B]);
    assert_eq!(shifts["hypotheses_hold"], Value::Bool(false));
    assert_eq!(shifts["conclusion_nilpotent"]["nilpotent"], Value::Bool(true));

    let common = json_ok(&["check", "--theorem", "1.1", "--s", J2, "--t", J2]);
    assert_eq!(common["hypotheses_hold"], Value::Bool(true));
    assert_eq!(common["lambda"], "0");

    let families = json_ok(&["check", "--theorem", "2.2", "--op", &multiplication_op(J2, I2)]);
    assert_eq!(families["hypotheses_hold"], Value::Bool(true));

    let missing = elemop(&["check", "--theorem", "2.2", "--a", J2]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn exhaustive_sweep_over_small_entries() {
    let v = json_ok(&["sweep", "--theorem", "2.1", "--dim", "2"]);
    assert_eq!(v["instances_tested"], 6561);
    assert_eq!(v["hypothesis_instances"], 1377);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for args in [
        vec!["sweep", "--theorem", "2.2", "--trials", "25", "--seed", "9"],
        vec!["search", "--target", "2.1-ext", "--trials", "20", "--seed", "9"],
    ] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{}-{run}.json", args[0]));
            let mut full = args.clone();
            full.extend(["--out", path.to_str().unwrap()]);
            assert_eq!(elemop(&full).status.code(), Some(0));
            outputs.push(fs::read(&path).unwrap());
        }
        assert_eq!(outputs[0], outputs[1]);
        let v: Value = serde_json::from_slice(&outputs[0]).unwrap();
        assert_eq!(v["violations"], serde_json::json!([]));
    }
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let garbage = write(dir.path(), "bad.json", "{\"rows\": 2");
    for args in [
        vec!["nilpotent", "--matrix", garbage.as_str()],
        vec!["nilpotent", "--matrix", "/nonexistent/m.json"],
        vec!["nilpotent", "--matrix", r#"{"rows":1,"cols":1,"entries":[["1/0"]]}"#],
        vec!["nilpotent", "--matrix", r#"{"rows":1,"cols":2,"entries":[["1"]]}"#],
        vec!["apply", "--op", &multiplication_op(J2, I2), "--x", FAMILY_A],
        vec!["sweep", "--theorem", "2.1", "--trials", "0"],
        vec!["bogus"],
    ] {
        let out = elemop(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(out.stdout.is_empty());
    }
}
