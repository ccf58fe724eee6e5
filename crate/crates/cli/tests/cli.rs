use std::process::{Command, Output};

use serde_json::Value;

fn lattes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattes")).args(args).env_remove("LATTES_PRECISION").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let o = lattes(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("single JSON document")
}

#[test]
fn functor_outputs() {
    let v = json(&["functor", "--curve", "4,2,0", "--D", "2", "--eps", "0+1*sqrt(2)"]);
    assert_eq!(v["A"], serde_json::json!([[0, 1], [2, 0]]));
    assert_eq!(v["theta_prime"], "(0+sqrt(2))/2");
    assert_eq!(v["T"], serde_json::json!([[2, 1], [1, 0]]));
    assert_eq!(v["zeta"], "1/(1-2t^2)");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(&keys[..8], ["D", "epsilon", "A", "theta_prime", "cf", "T", "zeta", "K0"]);

    let v = json(&["functor", "--D", "5", "--eps", "0+1*sqrt(5)"]);
    assert_eq!(v["A"], serde_json::json!([[0, 1], [5, 0]]));
    assert_eq!(v["cf"], "[0,2;(4)]");

    let o = lattes(&["functor", "--D", "2", "--eps", "1+0*sqrt(2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("b = 0"));
    let o = lattes(&["functor", "--D", "2", "--eps", "one"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn text_commands() {
    assert_eq!(stdout(&lattes(&["zeta", "--matrix", "0,1;2,0"])).trim(), "1/(1-2t^2)");
    assert_eq!(stdout(&lattes(&["cfrac", "--surd", "(0+sqrt(2))/2"])).trim(), "[0,1;(2)]");
    let se = stdout(&lattes(&["shift-equiv", "--A", "0,1;2,0", "--B", "0,2;1,0"]));
    assert!(se.starts_with("shift equivalence: Equivalent (lag 1, R = 0,1;1,0, S = 2,0;0,1)"), "{se}");
    let o = lattes(&["verify"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn json_commands() {
    let v = json(&["shift-equiv", "--A", "2", "--B", "3"]);
    assert_eq!(v["shift_equivalence"]["verdict"], "NotEquivalent");
    let v = json(&["periodic", "--map", "0,0,1 / 1", "-n", "2"]);
    assert_eq!(v["count_with_multiplicity"], 5);
    assert_eq!(v["finite_points"].as_array().unwrap().len(), 4);
    let v = json(&["compare", "--curve", "4,2,0", "--D", "2", "--eps", "0+1*sqrt(2)", "-n", "2"]);
    assert_eq!(v["rows"][1]["trace_count"], 4);
    assert_eq!(v["rows"][0]["multiplicity_count"], 5);
    let v = json(&["zeta", "--matrix", "3"]);
    assert_eq!(v["K0"]["text"], "Z/2");
    let v = json(&["verify"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["shift-equiv", "--A", "1,1;1,0", "--B", "0,1;1,1", "--output", "json"];
    assert_eq!(lattes(&args).stdout, lattes(&args).stdout);
}

#[test]
fn precision_handling() {
    let o = lattes(&["periodic", "--curve", "4,2,0", "-n", "1", "--precision", "32"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_lattes"))
        .args(["periodic", "--curve", "4,2,0", "-n", "1", "--precision", "32", "--output", "json"])
        .env("LATTES_PRECISION", "200")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["precision"], 200);
    assert_eq!(lattes(&["zeta", "--matrix", "1", "--entry-bound", "0"]).status.code(), Some(2));
    assert_eq!(
        lattes(&["compare", "--curve", "4,2,0", "--D", "2", "--eps", "0+1*sqrt(2)", "-n", "9"]).status.code(),
        Some(1)
    );
}
