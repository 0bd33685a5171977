use std::process::{Command, Output};

use quadabund::report::read_report;
use quadabund::BigInt;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadabund"))
        .args(args)
        .env_remove("QUADABUND_WORKERS")
        .output()
        .expect("binary runs")
}

fn records(args: &[&str]) -> Vec<Value> {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect()
}

fn one(args: &[&str]) -> Value {
    let mut r = records(args);
    assert_eq!(r.len(), 1);
    r.remove(0)
}

#[test]
fn factor_command() {
    let r = one(&["factor", "--d", "-1", "--z", "9,3"]);
    assert_eq!(r["record"], "factor");
    assert_eq!(r["factorization"]["unit"].to_string(), "[0,-1]");
    assert_eq!(
        r["factorization"]["factors"].to_string(),
        "[[1,1,1],[1,2,1],[3,0,1]]"
    );
}

#[test]
fn negative_coordinates_parse() {
    let r = one(&["index", "--d", "-1", "--z", "2,-1", "--n", "1"]);
    assert_eq!(r["value"], "1 + 1/5*sqrt(5)");
    let r = one(&["delta", "--d=-1", "--z=-3,0", "--n", "-2"]);
    assert_eq!(r["value"], "10/9");
}

#[test]
fn delta_and_index_values() {
    assert_eq!(
        one(&["delta", "--d", "-1", "--z", "3,0", "--n", "2"])["value"],
        "10"
    );
    assert_eq!(
        one(&["delta", "--d", "-2", "--z", "3,0", "--n", "2"])["value"],
        "16"
    );
    assert_eq!(
        one(&["index", "--d", "-1", "--z", "9,3", "--n", "2"])["value"],
        "2"
    );
}

#[test]
fn certify_command() {
    let r = one(&["certify", "--d", "-1", "--z", "2,1", "--n", "1"]);
    assert_eq!(r["certified"], true);
    assert_eq!(r["reason"], "split_prime_power_odd_n");
    let r = one(&["certify", "--d", "-1", "--z", "15,20", "--n", "1"]);
    assert_eq!(r["certified"], false);
    assert_eq!(r["reason"], Value::Null);
}

#[test]
fn friends_command_writes_report() {
    let path = std::env::temp_dir().join(format!("quadabund-cli-{}.jsonl", std::process::id()));
    let path_str = path.to_str().unwrap();
    let lines = records(&[
        "friends",
        "--d",
        "-1",
        "--n",
        "2",
        "--bound",
        "300",
        "--workers",
        "2",
        "--out",
        path_str,
    ]);
    assert_eq!(lines[0]["record"], "summary");
    assert_eq!(
        lines[0]["groups"].as_u64().unwrap() as usize,
        lines.len() - 1
    );
    let report = read_report::<BigInt>(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(report.groups.len(), lines.len() - 1);
    for (g, line) in report.groups.iter().zip(&lines[1..]) {
        assert_eq!(line["index_key"].as_str().unwrap(), g.index_key.to_string());
    }
}

#[test]
fn probe_and_exponent_commands() {
    let r = one(&[
        "probe", "--d", "-1", "--p", "3", "--k", "2", "--n", "1", "--bound", "2000",
    ]);
    assert_eq!(r["friend_found"], false);
    assert_eq!(r["certificate"], "ramified_or_inert_prime_power_odd_n");
    let r = one(&["verify-lemma35", "--p", "2", "--max-exp", "3"]);
    assert_eq!(r["holds"], true);
    assert_eq!(r["checked"], 256);
}

#[test]
fn pretty_output_is_text() {
    let out = run(&["--pretty", "index", "--d", "-1", "--z", "9,3", "--n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("I_2(9 + 3·ω[-1]) = 2"), "{text}");
}

#[test]
fn errors_exit_nonzero() {
    for args in [
        vec!["factor", "--d", "5", "--z", "1,1"],
        vec!["index", "--d", "-1", "--z", "0,0", "--n", "1"],
        vec!["index", "--d", "-1", "--z", "1,1", "--n", "0"],
        vec![
            "probe", "--d", "-1", "--p", "4", "--k", "1", "--n", "1", "--bound", "10",
        ],
        vec!["factor", "--d", "-1", "--z", "nonsense"],
    ] {
        let out = run(&args);
        assert!(!out.status.success(), "{args:?}");
        let err: Value = serde_json::from_slice(out.stderr.trim_ascii()).unwrap();
        assert_eq!(err["record"], "error");
    }
}
