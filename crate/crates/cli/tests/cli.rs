use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_domaincheck"));
    c.env_remove("DOMAINCHECK_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn fixture(name: &str, body: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_passing_suite_exits_zero() {
    let out = run(&["verify", "--suite", "exampleone"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["suite"], "exampleone");
    assert_eq!(r["cases"], r["passed"]);
}

#[test]
fn verify_failing_suite_exits_one() {
    let out = run(&["verify", "--suite", "prop12", "--max-size", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["failures"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["topology", "--poset", "diamond"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--poset", "/no/such/file.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_all_is_byte_identical() {
    let a = run(&["verify", "--suite", "all", "--seed", "42"]);
    let b = run(&["verify", "--suite", "all", "--seed", "42", "--sequential"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    let parts = r["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 18);
    assert_eq!(r["coverage"].as_array().unwrap().len(), 36);
}

#[test]
fn seed_from_environment_wins() {
    let out = bin()
        .args([
            "verify",
            "--suite",
            "prop4",
            "--max-size",
            "3",
            "--seed",
            "1",
        ])
        .env("DOMAINCHECK_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 7);
    let bad = bin()
        .args(["verify", "--suite", "prop4"])
        .env("DOMAINCHECK_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn corpus_list_counts() {
    let out = run(&["corpus", "list", "--max-size", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let generated = text.lines().filter(|l| l.starts_with('p')).count();
    assert!(text.lines().any(|l| l == "diamond\t4\t9"));
    assert!(generated >= 24);
}

#[test]
fn diamond_topologies() {
    let scott = json(&run(&["topology", "--poset", "diamond", "--kind", "scott"]));
    assert_eq!(scott["opens"].as_array().unwrap().len(), 6);
    let lawson = json(&run(&[
        "topology", "--poset", "diamond", "--kind", "lawson",
    ]));
    assert_eq!(lawson["opens"].as_array().unwrap().len(), 16);
    let glim = json(&run(&["topology", "--poset", "diamond", "--kind", "glim"]));
    assert_eq!(glim["opens"], scott["opens"]);
}

#[test]
fn diamond_way_below_is_order() {
    let w = json(&run(&["waybelow", "--poset", "diamond"]));
    assert_eq!(w["way_below"].as_array().unwrap().len(), 9);
}

#[test]
fn exampleone_classify() {
    let c = json(&run(&["classify", "--poset", "exampleone"]));
    assert_eq!(c["is_quasi_continuous"], true);
    assert_eq!(c["is_continuous"], false);
    assert_eq!(c["is_meet_continuous"], false);
}

#[test]
fn exampleone_convergence() {
    let net = fixture(
        "net.json",
        r#"{"index":"omega","period":2,"tracks":[{"kind":"ascend"},{"kind":"const","value":"a"}]}"#,
    );
    let ideal = fixture("ideal.json", r#"{"kind":"eventual"}"#);
    let go = |mode: &str, top: &str| {
        run(&[
            "converge",
            "--mode",
            mode,
            "--topology",
            top,
            "--poset",
            "exampleone",
            "--net",
            &net,
            "--ideal",
            &ideal,
            "--point",
            "a",
        ])
    };
    let gis = go("gis", "scott");
    assert_eq!(gis.status.code(), Some(0));
    assert_eq!(json(&gis)["holds"], true);
    assert_eq!(go("is", "scott").status.code(), Some(1));
    assert_eq!(go("topo", "scott").status.code(), Some(0));
    assert_eq!(go("topo", "lawson").status.code(), Some(1));
}

#[test]
fn diamond_rudin() {
    let fam = fixture("family.json", r#"{"sets":[["l","r"],["l"]]}"#);
    let out = run(&["rudin", "--poset", "diamond", "--family", &fam]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["directed"], serde_json::json!(["l"]));
}
