use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn regent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regent"))
        .args(args)
        .output()
        .unwrap()
}

fn regent_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_regent"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn temp(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("regent-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn examples_exit_codes() {
    assert_eq!(regent(&["example", "exa1"]).status.code(), Some(0));
    assert_eq!(regent(&["example", "exa3"]).status.code(), Some(0));
    let o = regent(&["example", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn entails_on_exa1() {
    let o = regent(&["--json", "entails", "-g", "exa1", "-a", "0", "-b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["certificate"]["type"], "cone");
    assert_eq!(v["certificate"]["n"], serde_json::json!([60]));
    assert_eq!(
        regent(&["entails", "-g", "exa1", "-a", "1", "-b", "0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn force_queries() {
    let q = r#"{"group":"exa1","query":{"kind":"force","op":"T","x":-7,"A":[3],"b":[130,84]}}"#;
    let o = regent_stdin(&["--json", "query", "-"], q);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["certificate"]["k"], serde_json::json!([3]));
    let q = r#"{"group":"exa1","query":{"kind":"force","op":"T","x":-7,"A":[3],"b":130}}"#;
    let o = regent_stdin(&["--json", "query", "-"], q);
    assert_eq!(json(&o)["certificate"]["k"], serde_json::json!([1]));
}

#[test]
fn malformed_queries_are_usage_errors() {
    assert_eq!(
        regent_stdin(&["query", "-"], "{\"group\": ").status.code(),
        Some(2)
    );
    let unknown = r#"{"group":"exa1","query":{"kind":"lcd","C":[1]},"extra":1}"#;
    assert_eq!(
        regent_stdin(&["query", "-"], unknown).status.code(),
        Some(2)
    );
    assert_eq!(
        regent(&["query", "/nonexistent/q.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_round_trip() {
    let q = r#"{"group":"exa1","query":{"kind":"force","op":"U","x":1,"A":[-1],"b":0}}"#;
    let cert = temp("u.json", "");
    let o = regent_stdin(&["query", "-", "--cert-out", cert.to_str().unwrap()], q);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        regent(&["verify", cert.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    doc["certificate"]["k"][0] = 58.into();
    std::fs::write(&cert, doc.to_string()).unwrap();
    assert_eq!(
        regent(&["verify", cert.to_str().unwrap()]).status.code(),
        Some(1)
    );

    std::fs::write(&cert, "").unwrap();
    assert_eq!(
        regent(&["verify", cert.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_file(cert).ok();
}

#[test]
fn unknown_within_budget_exits_3() {
    let q = r#"{"group":"exa1","query":{"kind":"force","op":"U","x":1,"A":[-1],"b":0},"budget":{"kMax":58}}"#;
    assert_eq!(regent_stdin(&["query", "-"], q).status.code(), Some(3));
}

#[test]
fn axioms_smoke() {
    let o = regent(&[
        "--json",
        "axioms",
        "-g",
        "exa3",
        "--suite",
        "regular",
        "--samples",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["samples"], 50);
    let o = regent(&[
        "axioms",
        "-g",
        "exa1",
        "--suite",
        "regular",
        "--backend",
        "raw",
        "--samples",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn lgroup_expressions() {
    let o = regent(&["--json", "lgroup", "meet(1, 4) - 2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["pair"], serde_json::json!([-1, 2]));
    assert_eq!(
        regent(&["lgroup", "1", "--leq", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(regent(&["lgroup", "meet(1"]).status.code(), Some(2));
}

#[test]
fn field_elements_as_numbers_and_coordinates() {
    let q = r#"{"group":"exa2","system":"dedekind","query":{"kind":"regularise","A":["z"],"b":1,"pool":[["1/2","0","1/2"]]},"budget":{"nMax":1,"poolExtras":[]}}"#;
    let o = regent_stdin(&["--json", "query", "-"], q);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(json(&o)["verdict"], "holds");
}
