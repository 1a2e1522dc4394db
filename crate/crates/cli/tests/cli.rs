use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newton-bif"))
        .args(args)
        .env_remove("NEWTON_BIF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    serde_json::from_slice(&o.stdout).unwrap()
}

const CASE_A: &str = "x1 + x1*x2 + x1^2*x2^2";
const CASE_B: &str = "x1 + x1^2*x2";
const EXP: &str = "x1^2 + x1^2*x2^2 + x1^2*x2^2*x3^3";

#[test]
fn golden_reports() {
    for (args, file) in [
        (vec!["analyze", "-p", CASE_A, "--format", "json"], "case_a_analyze.json"),
        (vec!["analyze", "-p", CASE_B, "--format", "json"], "case_b_analyze.json"),
        (vec!["faces", "-p", EXP, "--format", "json"], "exp_faces.json"),
        (vec!["fan", "-p", EXP], "exp_fan.txt"),
        (vec!["chi", "-p", "x1*x2", "1", "--format", "json"], "xy_chi.json"),
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o), golden(file), "{file}");
    }
}

#[test]
fn json_is_deterministic() {
    let args = ["analyze", "-p", "x1^3 + x2^3 + x1*x2 + x1^2*x2^2", "--format", "json", "--seed", "11"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let v = json(&args);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 11);
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_newton-bif"))
        .args(["kf", "-p", CASE_B, "--format", "json"])
        .env("NEWTON_BIF_SEED", "42")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 42);
}

#[test]
fn case_a_values() {
    let v = json(&["analyze", "-p", CASE_A, "--format", "json"]);
    let exact: Vec<_> = v["kf"]["candidates"].as_array().unwrap().iter().map(|c| c["value"]["exact"].as_str().unwrap().to_string()).collect();
    assert_eq!(exact, ["-1/4", "0"]);
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs[0]["verdict"], "certified-in-B_f");
    assert_eq!(certs[0]["theorem"], "N-Z");
    assert_eq!(certs[0]["euler_jump"]["jump"], 1);
    assert_eq!(certs[1]["verdict"], "candidate-only");
    assert_eq!(certs[1]["euler_jump"]["jump"], 1);
    assert_eq!(v["euler"]["generic_chi"]["value"], -1);
}

#[test]
fn degenerate_input_exits_2() {
    let o = run(&["analyze", "-p", "x1^2 + 2*x1*x2 + x2^2"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("fail"));
    assert!(text.contains("witness point"));
    assert!(text.contains("verified exactly"));
}

#[test]
fn guard_exits_3() {
    let o = run(&["analyze", "-p", "x1 + x2 + x3 + x4 + x5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn other_errors_exit_1() {
    assert_eq!(run(&["analyze", "-p", "x1 + * x2"]).status.code(), Some(1));
    assert_eq!(run(&["chi", "-p", "x1 + x2 + x3", "1"]).status.code(), Some(1));
    assert_eq!(run(&["certify", "-p", CASE_A, "5"]).status.code(), Some(1));
}

#[test]
fn subcommands() {
    let o = run(&["certify", "-p", CASE_A, "0"]);
    assert!(stdout(&o).contains("candidate-only"));
    let v = json(&["certify", "-p", CASE_A, "-1/4", "--format", "json", "--full-trace"]);
    assert_eq!(v["certificate"]["verdict"], "certified-in-B_f");
    assert!(v["certificate"]["hypothesis_trace"].as_array().unwrap().iter().any(|h| h["theorem"] == "MT-1"));
    let v = json(&["chi", "-p", "x1*x2", "1", "--format", "json"]);
    assert_eq!(v["fiber"]["chi"], 0);
    let v = json(&["jump", "-p", CASE_A, "-0.25", "--format", "json"]);
    assert_eq!(v["jump"]["jump"], 1);
    let v = json(&["fan", "-p", EXP, "--format", "json"]);
    assert_eq!(v["cones"].as_array().unwrap().len(), 15);
}

#[test]
fn file_input_and_assumed_values() {
    let dir = std::env::temp_dir().join(format!("newton-bif-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = dir.join("a.txt");
    std::fs::write(&text, CASE_A).unwrap();
    let terms = dir.join("a.json");
    std::fs::write(&terms, "[[1, 1, [1, 0]], [1, 1, [1, 1]], [1, 1, [2, 2]]]").unwrap();
    let a = json(&["kf", "-f", text.to_str().unwrap(), "--format", "json"]);
    let b = json(&["kf", "-f", terms.to_str().unwrap(), "--format", "json"]);
    assert_eq!(a["kf"], b["kf"]);
    let c = json(&["kf", "-p", CASE_A, "--format", "json", "--assume-critical-values", "0", "--skip-nondegeneracy-check"]);
    assert_eq!(c["kf"]["candidates"].as_array().unwrap().len(), 2);
    assert!(c["nondegeneracy"].is_null());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn every_value_carries_status() {
    fn walk(v: &serde_json::Value, path: &str, bad: &mut Vec<String>) {
        match v {
            serde_json::Value::Object(m) => {
                if m.contains_key("approx") || m.contains_key("value") && !m.contains_key("status") && m["value"].is_number() {
                    if !m.contains_key("status") {
                        bad.push(path.to_string());
                    }
                }
                for (k, x) in m {
                    walk(x, &format!("{path}.{k}"), bad);
                }
            }
            serde_json::Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| walk(x, &format!("{path}[{i}]"), bad)),
            _ => {}
        }
    }
    let mut bad = Vec::new();
    walk(&json(&["analyze", "-p", CASE_A, "--format", "json"]), "", &mut bad);
    assert!(bad.is_empty(), "{bad:?}");
}
