use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K3: &str = r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#;
const P3: &str = r#"{"n":3,"edges":[[0,1],[1,2]]}"#;
const C6: &str = "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
const K23: &str = r#"{"n":5,"edges":[[0,2],[0,3],[0,4],[1,2],[1,3],[1,4]]}"#;
const DOUBLE_STAR: &str = "0 1\n0 2\n0 3\n1 4\n1 5\n";

struct Dir(TempDir);

impl Dir {
    fn new() -> Dir {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn tcmg(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tcmg"));
    cmd.args(args).env_remove("TCMG_ORACLE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn run(args: &[&str]) -> (i32, Option<Value>) {
    let out = tcmg(args, &[]);
    let json = serde_json::from_slice(&out.stdout).ok();
    (out.status.code().unwrap(), json)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_least_core_on_triangle() {
    let d = Dir::new();
    let g = d.file("k3.json", K3);
    let (code, json) = run(&["solve", "--graph", p(&g), "--threshold", "1", "--what", "least-core"]);
    let json = json.unwrap();
    assert_eq!(code, 0);
    assert_eq!(json["schema"], "tcmg-report/1");
    assert_eq!(json["input"], serde_json::json!({"n": 3, "m": 3, "T": 1}));
    assert_eq!(json["result"]["epsilon"], "-1/3");
    assert_eq!(json["result"]["point"], serde_json::json!(["1/3", "1/3", "1/3"]));
    assert!(json["time_ms"].is_u64());
}

#[test]
fn solve_nucleolus_on_path() {
    let d = Dir::new();
    let g = d.file("p3.json", P3);
    let (code, json) = run(&["solve", "--graph", p(&g), "--threshold", "1", "--what", "nucleolus"]);
    assert_eq!(code, 0);
    assert_eq!(json.unwrap()["result"]["point"], serde_json::json!(["0/1", "1/1", "0/1"]));
}

#[test]
fn solve_reports_rounds_and_methods() {
    let d = Dir::new();
    let g = d.file("k23.json", K23);
    for (method, tag) in [("auto", "specialized_ecg"), ("essential", "essential"), ("brute-force", "brute_force")] {
        let (code, json) = run(&["solve", "--graph", p(&g), "--threshold", "1", "--what", "nucleolus", "--method", method]);
        let json = json.unwrap();
        assert_eq!(code, 0);
        assert_eq!(json["method"], tag);
        assert_eq!(json["result"]["point"], serde_json::json!(["1/2", "1/2", "0/1", "0/1", "0/1"]));
        assert!(!json["rounds"].as_array().unwrap().is_empty());
        assert_eq!(json["rounds"][0]["epsilon"], "-1/2");
    }
}

#[test]
fn solve_core_and_mig() {
    let d = Dir::new();
    let g = d.file("c6.txt", C6);
    let (code, json) = run(&["solve", "--graph", p(&g), "--threshold", "3", "--what", "core"]);
    let json = json.unwrap();
    assert_eq!(code, 0);
    assert_eq!(json["result"]["nonempty"], true);
    assert_eq!(json["result"]["veto_players"], serde_json::json!([0, 1, 2, 3, 4, 5]));

    let (code, json) = run(&["solve", "--graph", p(&g), "--threshold", "2", "--what", "mig"]);
    let json = json.unwrap();
    assert_eq!(code, 0);
    assert_eq!(json["result"]["alpha"], "2/3");
    assert_eq!(json["result"]["delta"], "2/3");
    let weights: Vec<&str> = json["result"]["matcher"].as_array().unwrap().iter().map(|w| w["weight"].as_str().unwrap()).collect();
    assert!(!weights.is_empty());
}

#[test]
fn threshold_out_of_range_exits_4() {
    let d = Dir::new();
    let g = d.file("k3.json", K3);
    let out = tcmg(&["solve", "--graph", p(&g), "--threshold", "2", "--what", "core"], &[]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("threshold"));
}

#[test]
fn parse_errors_exit_2() {
    let d = Dir::new();
    let loop_ = d.file("loop.json", r#"{"n":2,"edges":[[0,0]]}"#);
    let out = tcmg(&["solve", "--graph", p(&loop_), "--threshold", "1", "--what", "core"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));

    let bad = d.file("bad.txt", "0 1\n1 q\n");
    let out = tcmg(&["decompose", "--graph", p(&bad)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = tcmg(&["decompose", "--graph", "/nonexistent/g.json"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inapplicable_method_exits_2() {
    let d = Dir::new();
    let g = d.file("g.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n0 2\n1 4\n");
    let (code, _) = run(&["solve", "--graph", p(&g), "--threshold", "1", "--what", "least-core", "--method", "essential"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["solve", "--graph", p(&g), "--threshold", "2", "--what", "least-core", "--method", "closed-form"]);
    assert_eq!(code, 2);
    let (code, json) = run(&["solve", "--graph", p(&g), "--threshold", "2", "--what", "least-core", "--method", "constraint-gen"]);
    assert_eq!(code, 0);
    assert_eq!(json.unwrap()["method"], "constraint_generation");
}

#[test]
fn decompose_examples() {
    let d = Dir::new();
    let (code, json) = run(&["decompose", "--graph", p(&d.file("p3.json", P3))]);
    let json = json.unwrap();
    assert_eq!(code, 0);
    assert_eq!(json["result"]["tutte_set"], serde_json::json!([1]));
    assert_eq!(json["result"]["odd_components"], serde_json::json!([[0], [2]]));

    let (_, json) = run(&["decompose", "--graph", p(&d.file("c6.txt", C6))]);
    let json = json.unwrap();
    assert_eq!(json["result"]["tutte_set"], serde_json::json!([]));
    assert_eq!(json["result"]["even_components"], serde_json::json!([[0, 1, 2, 3, 4, 5]]));
    assert_eq!(json["result"]["max_matching_size"], 3);

    let (_, json) = run(&["decompose", "--graph", p(&d.file("ds.txt", DOUBLE_STAR))]);
    assert_eq!(json.unwrap()["result"]["d02"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_examples() {
    let d = Dir::new();
    let g = d.file("k3.json", K3);
    let verify = |x: &str, eps: &str| {
        let imp = d.file("x.json", x);
        run(&["verify", "--graph", p(&g), "--threshold", "1", "--imputation", p(&imp), "--epsilon", eps])
    };
    let (code, json) = verify(r#"["1/3","1/3","1/3"]"#, "-1/3");
    assert_eq!(code, 0);
    assert_eq!(json.unwrap()["result"]["accepted"], true);

    let (code, json) = verify(r#"["1/1","0/1","0/1"]"#, "-1/3");
    let json = json.unwrap();
    assert_eq!(code, 1);
    assert_eq!(json["result"]["accepted"], false);
    assert_eq!(json["certificate"], serde_json::json!([[[1, 2]]]));

    assert_eq!(verify(r#"["1/2","0/1","0/1"]"#, "-1/3").0, 5);
    assert_eq!(verify(r#"["3/2","-1/2","0/1"]"#, "-1/3").0, 5);
    assert_eq!(verify(r#"["1/2","1/2"]"#, "-1/3").0, 5);
    assert_eq!(verify(r#"["1/3","one third","1/3"]"#, "-1/3").0, 2);
    assert_eq!(verify(r#"{"x":1}"#, "-1/3").0, 2);
    assert_eq!(verify(r#"["1/3","1/3","1/3"]"#, "-1/0").0, 2);
}

#[test]
fn oracle_compare_examples() {
    let d = Dir::new();
    let c6 = d.file("c6.txt", C6);
    let (code, json) = run(&["oracle", "--graph", p(&c6), "--threshold", "2", "--what", "least-core", "--compare"]);
    assert_eq!(code, 0);
    assert_eq!(json.unwrap()["result"]["identical"], true);

    let k23 = d.file("k23.json", K23);
    let (code, json) = run(&["oracle", "--graph", p(&k23), "--threshold", "1", "--what", "nucleolus", "--compare"]);
    let json = json.unwrap();
    assert_eq!(code, 0);
    assert_eq!(json["result"]["fast"]["point"], json["result"]["oracle"]["point"]);

    for what in ["core", "mig"] {
        let (code, json) = run(&["oracle", "--graph", p(&k23), "--threshold", "1", "--what", what, "--compare"]);
        assert_eq!(code, 0, "{what}");
        assert_eq!(json.unwrap()["result"]["identical"], true);
    }
}

#[test]
fn oracle_reports_excess_profile() {
    let d = Dir::new();
    let g = d.file("k3.json", K3);
    let (code, json) = run(&["oracle", "--graph", p(&g), "--threshold", "1", "--what", "nucleolus"]);
    let json = json.unwrap();
    assert_eq!(code, 0);
    let profile = json["result"]["excess_profile"].as_array().unwrap();
    assert_eq!(profile.len(), 6);
    assert_eq!(profile[0]["excess"], "-1/3");
}

#[test]
fn oracle_cap_exits_3_and_can_be_raised() {
    let d = Dir::new();
    let ring: String = (0..20).map(|i| format!("{i} {}\n", (i + 1) % 20)).collect();
    let g = d.file("c20.txt", &ring);
    let out = tcmg(&["oracle", "--graph", p(&g), "--threshold", "1", "--what", "least-core"], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let c13: String = (0..13).map(|i| format!("{i} {}\n", (i + 1) % 13)).collect();
    let g = d.file("c13.txt", &c13);
    let args = ["solve", "--graph", p(&g), "--threshold", "1", "--what", "least-core", "--method", "brute-force"];
    assert_eq!(tcmg(&args, &[]).status.code(), Some(3));
    let out = tcmg(&args, &[("TCMG_ORACLE_CAP", "13")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(tcmg(&args, &[("TCMG_ORACLE_CAP", "lots")]).status.code(), Some(2));
}

#[test]
fn output_is_byte_deterministic_without_time() {
    let d = Dir::new();
    let g = d.file("k23.json", K23);
    for what in ["core", "least-core", "nucleolus", "mig"] {
        let args = ["solve", "--graph", p(&g), "--threshold", "1", "--what", what, "--no-time", "--pretty"];
        let a = tcmg(&args, &[]);
        let b = tcmg(&args, &[]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        let json: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(json["time_ms"].is_null());
    }
}

fn is_ratio(s: &str) -> bool {
    s.split_once('/').is_some_and(|(a, b)| a.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) && b.chars().all(|c| c.is_ascii_digit()) && !a.is_empty() && !b.is_empty())
}

fn rationals_in(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) if is_ratio(s) => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| rationals_in(x, out)),
        Value::Object(o) => o.values().for_each(|x| rationals_in(x, out)),
        _ => {}
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

#[test]
fn rationals_are_reduced_with_positive_denominators() {
    let d = Dir::new();
    let g = d.file("ds.txt", DOUBLE_STAR);
    let (_, json) = run(&["oracle", "--graph", p(&g), "--threshold", "1", "--what", "nucleolus", "--compare"]);
    let mut found = Vec::new();
    rationals_in(&json.unwrap(), &mut found);
    assert!(found.len() > 10);
    for s in found {
        let (a, b) = s.split_once('/').unwrap();
        let (a, b): (i64, i64) = (a.parse().unwrap(), b.parse().unwrap());
        assert!(b > 0 && gcd(a, b) == 1, "{s}");
    }
}
