use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const FOREST_CSV: &str = "region,A,B,C\ne1,0.8,0.3,0.5\ne2,0.1,0.5,0.7\ne3,0.2,0.3,0.8\ne4,0.1,0.3,0.5\n";

fn fskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fskit"))
        .args(args)
        .env_remove("FSKIT_SEED")
        .output()
        .expect("run fskit")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = fskit(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Forest table converted to the canonical JSON form.
fn forest(dir: &Path) -> PathBuf {
    let csv = write(dir, "forest.csv", FOREST_CSV);
    let out = dir.join("forest.json");
    let set = format!("f={}", s(&csv));
    let (code, _) = json(&["ops", "--set", &set, "--out", s(&out), "union f phi"]);
    assert_eq!(code, 0);
    out
}

#[test]
fn csv_converts_to_canonical_json() {
    let dir = TempDir::new().unwrap();
    let f = forest(dir.path());
    let text = fs::read_to_string(&f).unwrap();
    assert!(text.starts_with("{\n  \"universe\": [\n    \"A\","));
    assert!(text.contains("\"0.8\""));
    let again = dir.path().join("again.json");
    let set = format!("f={}", s(&f));
    json(&["ops", "--set", &set, "--out", s(&again), "f"]);
    assert_eq!(fs::read_to_string(&again).unwrap(), text);
}

#[test]
fn ops_predicates_and_errors() {
    let dir = TempDir::new().unwrap();
    let f = forest(dir.path());
    let g = write(
        dir.path(),
        "g.json",
        r#"{"universe":["A","B","C"],"parameters":["x"],"grades":[["0.1","0.2","0.3"]]}"#,
    );
    let sets = [format!("f={}", s(&f)), format!("g={}", s(&g))];
    let (code, v) = json(&["ops", "--set", &sets[0], "--set", &sets[1], "subset? phi f"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["result"], "true");

    let (code, v) = json(&["ops", "--set", &sets[0], "--set", &sets[1], "intersect f g"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"], "parameter sets have empty intersection");

    let (code, v) = json(&["ops", "--set", &sets[0], "union f h"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "unknown identifier `h`");
}

#[test]
fn file_stem_names_the_set() {
    let dir = TempDir::new().unwrap();
    let f = forest(dir.path());
    let (code, v) = json(&["ops", "--set", s(&f), "equal? forest (union forest forest)"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["result"], "true");
}

#[test]
fn bad_documents_are_reported() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"universe":["A"],"parameters":["e"],"grades":[["1.2"]]}"#,
    );
    let (code, v) = json(&["decide", s(&bad)]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "cell grades[e][A]: grade `1.2` is outside [0, 1]");

    let empty = write(
        dir.path(),
        "empty.json",
        r#"{"universe":[],"parameters":["e"],"grades":[[]]}"#,
    );
    let (code, v) = json(&["decide", s(&empty)]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().starts_with("invalid universe"));

    let broken = write(dir.path(), "broken.json", "{\n  \"universe\": [\"A\"\n");
    let (code, v) = json(&["decide", s(&broken)]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().starts_with("parse error at line 3"));
}

#[test]
fn decide_rankings() {
    let dir = TempDir::new().unwrap();
    let f = forest(dir.path());
    let (_, v) = json(&["decide", s(&f)]);
    let rows = v["table"]["rows"].as_array().unwrap();
    let order: Vec<&str> = rows.iter().map(|r| r[1].as_str().unwrap()).collect();
    assert_eq!(order, ["C", "B", "A"]);
    assert_eq!(rows[2][2], "0.1");

    let (code, v) = json(&["decide", s(&f), "--strategy", "weighted-sum", "--weights", "1,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["best"], "A");

    let (code, v) = json(&["decide", s(&f), "--strategy", "weighted-sum", "--weights", "1,2"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("2 weights for 4 parameters"));
}

#[test]
fn check_suites_and_fault_injection() {
    let (code, v) = json(&["check", "demorgan", "--count", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["violations"], "0");
    assert_eq!(v["seed"], 0);

    let (code, v) = json(&["check", "maplaws", "--count", "500", "--inject-fault"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "violation");
    assert!(v["witness"].as_str().unwrap().starts_with("case 0: "));

    let (code, v) = json(&["check", "associativity"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().starts_with("unknown law"));
}

#[test]
fn seed_comes_from_flag_or_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_fskit"));
        cmd.args(["--format", "json", "check", "identities", "--count", "20"])
            .args(extra);
        cmd.env_remove("FSKIT_SEED");
        if let Some(s) = env {
            cmd.env("FSKIT_SEED", s);
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 0);
    assert_eq!(run(Some("42"), &[]), 42);
    assert_eq!(run(Some("42"), &["--seed", "7"]), 7);
}

#[test]
fn fixpoint_scalar_table() {
    let (code, v) = json(&["fixpoint", "--map", "x/2+1", "--k", "0.5", "--tol", "1e-9"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["summary"]["outcome"], "converged");
    let n: usize = v["summary"]["iterations"].as_str().unwrap().parse().unwrap();
    assert!(n <= 34);
    let x: f64 = v["summary"]["fixed_point"].as_str().unwrap().parse().unwrap();
    assert!((x - 2.0).abs() < 1e-8, "{x}");
    assert_eq!(v["table"]["columns"][4], "apriori");
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), n);
}

#[test]
fn fixpoint_affine_and_errors() {
    let (code, v) = json(&[
        "fixpoint",
        "--matrix",
        "0.2,0.1;0,0.3",
        "--offset",
        "1,1",
        "--start",
        "-7,9",
    ]);
    assert_eq!(code, 0);
    let fp = v["summary"]["fixed_point"].as_str().unwrap();
    let xs: Vec<f64> = fp
        .trim_matches(|c| c == '(' || c == ')')
        .split(", ")
        .map(|t| t.parse().unwrap())
        .collect();
    assert!(xs.iter().all(|x| (x - 10.0 / 7.0).abs() < 1e-9), "{fp}");

    let (code, v) = json(&["fixpoint", "--map", "x/2", "--k", "1"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().starts_with("invalid contraction"));

    let (code, v) = json(&["fixpoint", "--map", "3*x+1", "--k", "0.5"]);
    assert_eq!(code, 2);
    assert!(v["error"]
        .as_str()
        .unwrap()
        .starts_with("contraction violated at step 2"));

    let (code, _) = json(&[
        "fixpoint",
        "--map",
        "x/2",
        "--k",
        "0.5",
        "--start",
        "1e6",
        "--max-iter",
        "3",
    ]);
    assert_eq!(code, 1);
}

const INDISCRETE: &str =
    r#"{"universe":["a","b"],"parameters":["e1","e2"],"sets":[[["0","0"],["0","0"]],[["1","1"],["1","1"]]]}"#;

#[test]
fn topology_commands() {
    let dir = TempDir::new().unwrap();
    let t = write(dir.path(), "t.json", INDISCRETE);
    let (code, v) = json(&["topology", "check", s(&t)]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["verdict"], "ok");

    let (code, v) = json(&["topology", "slice", s(&t)]);
    assert_eq!(code, 0);
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 2);

    let (code, v) = json(&["topology", "separation", s(&t), "--require", "t0"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"], "not T0 at pair (a, b)");

    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"universe":["a","b"],"parameters":["e"],"sets":[[["0","0"]],[["1","0"]],[["0","1"]],[["1","1"]],[["0.5","0"]],[["0","0.5"]]]}"#,
    );
    let (code, v) = json(&["topology", "check", s(&broken)]);
    assert_eq!(code, 1);
    assert!(v["witness"].as_str().unwrap().starts_with("union_violation"));
}

#[test]
fn topology_lift_writes_a_family() {
    let dir = TempDir::new().unwrap();
    let f = forest(dir.path());
    let out = dir.path().join("lift.json");
    let (code, v) = json(&[
        "topology",
        "lift",
        s(&f),
        "--param",
        "e3",
        "--levels",
        "4",
        "--out",
        s(&out),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["verdict"], "ok");
    let (code, v) = json(&["topology", "check", s(&out)]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn real_arithmetic() {
    let (code, v) = json(&["real", "add", "1,2,3", "2,3,4", "--oracle", "0.001"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["core"], "[5, 5]");
    let dev: f64 = v["summary"]["oracle_max_deviation"].as_str().unwrap().parse().unwrap();
    assert!(dev < 0.01);

    let (code, v) = json(&["--grid", "4", "real", "abs", "-3,-1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["summary"]["core"], "[1, 1]");

    let (code, v) = json(&["real", "div", "1,2,3", "-1,0,1"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("contains zero"));
}

#[test]
fn csv_and_text_formats() {
    let out = fskit(&["--format", "csv", "check", "demorgan", "--count", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\ncommand,check\nseed,0\n"));
    assert!(text.contains("\nitem,checks,violations,inapplicable\n"));

    let out = fskit(&["check", "demorgan", "--count", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: check\n"));
    assert!(text.contains("status: ok\n"));
}
