use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    dir.join(name).to_string_lossy().into_owned()
}

fn rtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtl")).args(args).output().expect("run rtl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn vm_holds() {
    let o = rtl(&["check", "--model", &corpus("vm.ccs"), "--formula", "G(c -> F p)", "--cc", "progress", "--block", "c"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("holds"));
}

#[test]
fn vm_fails_with_finite_witness() {
    let model = corpus("vm.ccs");
    let args = ["check", "--model", &model, "--formula", "G(p -> F c)", "--cc", "progress", "--block", "c", "--json"];
    let o = rtl(&args);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["criterion"], "progress");
    assert_eq!(v["block"], serde_json::json!(["c"]));
    let cex = &v["counterexample"];
    assert_eq!(cex["kind"], "finite");
    let actions: Vec<&Value> = cex["prefix"].as_array().unwrap().iter().map(|s| &s["action"]).collect();
    assert_eq!(actions, [&Value::from("c"), &Value::from("p"), &Value::Null]);
    // deterministic
    assert_eq!(stdout(&rtl(&args)), stdout(&o));
}

#[test]
fn f0_fails_fs1_under_weak_fairness() {
    let o = rtl(&[
        "check", "--model", &corpus("fs_f0.ccs"), "--formula", "G F r1", "--cc", "wf", "--tasks-by-label", "--block", "r2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = rtl(&[
        "check", "--model", &corpus("fs_f0.ccs"), "--formula", "G F r1", "--cc", "sf", "--tasks-by-label", "--block", "r2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn formula_file_reports_every_formula() {
    let o = rtl(&[
        "check", "--model", &corpus("fs_f1f2.ccs"), "--formula-file", &corpus("fs.ltl"), "--cc", "justness", "--block",
        "r1,r2", "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    let verdict = |name: &str| rows.iter().find(|r| r["name"] == name).unwrap()["verdict"].clone();
    assert_eq!(verdict("FS1_1"), "fails");
    assert_eq!(verdict("FS2_1"), "holds");
    assert_eq!(verdict("FS2_2"), "holds");
    assert_eq!(verdict("FS4_1"), "fails");
}

#[test]
fn ctl_logic() {
    let o = rtl(&["check", "--model", &corpus("vm.ccs"), "--logic", "ctl", "--formula", "AG(c -> AF p)", "--block", "c"]);
    assert_eq!(o.status.code(), Some(0));
    let o = rtl(&["check", "--model", &corpus("vm.ccs"), "--logic", "ctl", "--formula", "AG(p -> AF c)", "--block", "c"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_model_errors_exit_2() {
    let vm = corpus("vm.ccs");
    for args in [
        vec!["check", "--model", &vm, "--formula", "X p"],
        vec!["check", "--model", &vm, "--formula", "G F c", "--cc", "wf"],
        vec!["check", "--model", &vm, "--formula", "G F c", "--cc", "fair"],
        vec!["check", "--model", &vm, "--formula", "p", "--block", "tau"],
        vec!["check", "--model", "/nonexistent.ccs", "--formula", "p"],
        vec!["check", "--model", &vm],
        vec!["oracle", "--model", &vm, "--formula", "p", "--bounds", "2"],
    ] {
        let o = rtl(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn state_space_limit_is_an_error() {
    let o = rtl(&["check", "--model", &corpus("growth.net.json"), "--formula", "G F t", "--max-states", "50"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_self_conflict_net() {
    let o = rtl(&["validate", "--model", &corpus("self_conflict.net.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("{t,t}"));
    let o = rtl(&["validate", "--model", &corpus("two_loops.net.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn validate_ccs_models() {
    for m in ["fs_gatekeeper.ccs", "me_f.ccs", "beer_F.lts.json"] {
        let o = rtl(&["validate", "--model", &corpus(m)]);
        assert_eq!(o.status.code(), Some(0), "{m}: {}", stdout(&o));
    }
}

#[test]
fn oracle_beer_d() {
    let o = rtl(&[
        "oracle", "--model", &corpus("beer_D.lts.json"), "--formula", "F B", "--cc", "justness", "--bounds", "2,4", "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "fails");
    let cex = &v["counterexample"];
    assert_eq!(cex["kind"], "lasso");
    let cycle: Vec<&str> = cex["cycle"].as_array().unwrap().iter().map(|s| s["action"].as_str().unwrap()).collect();
    assert!(!cycle.contains(&"B"));
    assert!(cycle.contains(&"A") && cycle.contains(&"C"));

    let o = rtl(&[
        "oracle", "--model", &corpus("beer_D.lts.json"), "--formula", "F B", "--cc", "wf", "--tasks",
        &corpus("beer_D.tasks.json"), "--bounds", "3,3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn explore_gatekeeper_dot() {
    let dot = tmp("gatekeeper.dot");
    let o = rtl(&["explore", "--model", &corpus("fs_gatekeeper.ccs"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    let states = text.lines().filter(|l| l.trim_start().starts_with('s') && l.contains("[label=")).count();
    assert_eq!(states, 9);
    assert!(text.contains("label=\"X\""));
}

#[test]
fn explore_round_trip_keeps_verdicts() {
    let cases: &[(&str, &str, &[&str])] = &[
        ("fs_f1f2.ccs", "fs.ltl", &["--cc", "justness", "--block", "r1,r2"]),
        ("fs_gatekeeper.ccs", "fs.ltl", &["--cc", "wf", "--tasks-by-label", "--block", "r2"]),
        ("me_f.ccs", "me.ltl", &["--cc", "justness", "--block", "ln1,ln2"]),
        ("vm.net.json", "fs.ltl", &["--cc", "progress"]),
    ];
    for (model, formulas, extra) in cases {
        let json = tmp(&format!("{model}.lts.json"));
        let o = rtl(&["explore", "--model", &corpus(model), "--out", json.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let run = |path: &str| {
            let ff = corpus(formulas);
            let mut args = vec!["check", "--model", path, "--formula-file", &ff, "--json"];
            args.extend_from_slice(extra);
            let o = rtl(&args);
            let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
            let verdicts: Vec<Value> = v.as_array().unwrap().iter().map(|r| r["verdict"].clone()).collect();
            (o.status.code(), verdicts)
        };
        assert_eq!(run(&corpus(model)), run(json.to_str().unwrap()), "{model}");
    }
}
