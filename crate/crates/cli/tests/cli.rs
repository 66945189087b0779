use std::process::{Command, Output};

use serde_json::Value;

fn nbk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbk"))
        .args(args)
        .env_remove("NBK_CYCLOTOMIC_ORDER")
        .output()
        .expect("nbk runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn group(v: &Value) -> (u64, Vec<u64>) {
    let torsion = v["torsion"].as_array().unwrap().iter().map(|t| t.as_u64().unwrap()).collect();
    (v["rank"].as_u64().unwrap(), torsion)
}

#[test]
fn ktheory_b3() {
    let out = nbk(&["ktheory", "B3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "nbk-report/1");
    assert_eq!(group(&v["payload"]["K0"]), (2, vec![3]));
    assert_eq!(group(&v["payload"]["K1"]), (2, vec![]));
}

#[test]
fn ktheory_family_flag_matches_positional() {
    let a = nbk(&["ktheory", "B4"]);
    let b = nbk(&["ktheory", "--family", "B4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(group(&json(&a)["payload"]["K0"]), (2, vec![2]));
}

#[test]
fn b2_groups_do_not_depend_on_epsilon() {
    let plus = json(&nbk(&["ktheory", "B2", "--epsilon", "+1"]));
    let minus = json(&nbk(&["ktheory", "B2", "--epsilon", "-1"]));
    assert_eq!(plus["payload"]["K0"], minus["payload"]["K0"]);
    assert_eq!(plus["payload"]["K1"], minus["payload"]["K1"]);
    assert_eq!(group(&plus["payload"]["K0"]), (2, vec![2, 2]));
    assert_ne!(plus["payload"]["matrix"], minus["payload"]["matrix"]);
}

#[test]
fn b6_json() {
    let v = json(&nbk(&["ktheory", "B6", "--format", "json"]));
    assert_eq!(group(&v["payload"]["K0"]), (2, vec![]));
    assert_eq!(group(&v["payload"]["K1"]), (2, vec![]));
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn folded_theta_uses_a_larger_field() {
    let out = nbk(&["ktheory", "B3", "--theta", "1/5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["cyclotomic_order"], 120);
    assert_eq!(group(&v["payload"]["K0"]), (2, vec![3]));
}

#[test]
fn environment_sets_the_base_order() {
    let out = Command::new(env!("CARGO_BIN_EXE_nbk"))
        .args(["ktheory", "B4"])
        .env("NBK_CYCLOTOMIC_ORDER", "48")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["cyclotomic_order"], 48);
    let bad = Command::new(env!("CARGO_BIN_EXE_nbk"))
        .args(["ktheory", "B4"])
        .env("NBK_CYCLOTOMIC_ORDER", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn scan_b4_matches() {
    let out = nbk(&["scan", "--family", "B4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["B4"]["admissible"], v["payload"]["B4"]["expected"]);
}

#[test]
fn scan_at_denominator_two() {
    let out = nbk(&["scan", "--family", "B3", "--denominator", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = &json(&out)["payload"]["B3"]["admissible"];
    assert_eq!(rows, &serde_json::json!([["0", "0"]]));
}

#[test]
fn scan_b6_reports_the_table_mismatch() {
    let out = nbk(&["scan", "--family", "B6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"][0]["status"], "fail");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nbk(&["ktheory", "B9"]).status.code(), Some(2));
    assert_eq!(nbk(&["ktheory", "N1"]).status.code(), Some(2));
    assert_eq!(nbk(&["ktheory", "B2", "--epsilon", "2"]).status.code(), Some(2));
    assert_eq!(nbk(&["scan", "--denominator", "0"]).status.code(), Some(2));
    assert_eq!(nbk(&["verify", "--suite", "nothing"]).status.code(), Some(2));
    assert_eq!(nbk(&["ktheory", "B3", "--theta", "x"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["homology", "betastar", "morita", "traces"] {
        let out = nbk(&["verify", "--suite", suite, "--samples", "8"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn homology_payload() {
    let v = json(&nbk(&["homology", "--family", "B2"]));
    assert_eq!(group(&v["payload"]["B2"]["H1"]), (1, vec![2, 2]));
}

#[test]
fn reports_are_byte_stable() {
    let args = ["verify", "--suite", "crossed", "--samples", "6", "--seed", "7", "--format", "md"];
    assert_eq!(nbk(&args).stdout, nbk(&args).stdout);
    let args = ["verify", "--suite", "algebra", "--samples", "6", "--seed", "7"];
    assert_eq!(nbk(&args).stdout, nbk(&args).stdout);
}

#[test]
fn out_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b3.md");
    let out = nbk(&["ktheory", "B3", "--format", "md", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# nbk ktheory B3"));
    assert!(text.contains("| K0 | Z^2 + Z_3 |"), "{text}");
}

#[test]
fn strict_turns_anomalies_into_failures() {
    assert_eq!(nbk(&["verify", "--suite", "betastar", "--family", "B2"]).status.code(), Some(0));
    assert_eq!(nbk(&["verify", "--suite", "betastar", "--family", "B2", "--strict"]).status.code(), Some(1));
    assert_eq!(nbk(&["verify", "--suite", "betastar", "--family", "B4", "--strict"]).status.code(), Some(0));
}
