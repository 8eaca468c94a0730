use fvh::gap::RgPolynomial;
use fvh_cli::run;
use serde_json::Value;

fn fvh(args: &[&str]) -> fvh_cli::Outcome {
    run(std::iter::once("fvh").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = fvh(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn pg_one_two_vanishes() {
    let v = json(&["pg", "--m", "1", "--n", "2", "--genus", "2", "--format", "json"]);
    for entry in v["P"].as_array().unwrap() {
        assert_eq!(entry["num"], "0");
        assert_eq!(entry["den"], "1");
    }
    assert_eq!(v["P"].as_array().unwrap().len(), 2);
}

#[test]
fn same_arguments_same_bytes() {
    for args in [
        &["pg", "--genus", "3", "--format", "latex"][..],
        &["rg-poly", "--genus", "3", "--format", "json"],
        &["omega", "--m", "2", "--n", "3", "--lambda", "1/2", "--mu", "1", "--format", "json"],
    ] {
        assert_eq!(fvh(args), fvh(args), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(fvh(&["check", "--suite", "evenness", "--m", "2", "--n", "3"]).code, 0);
    // non-coprime pair and malformed λ are usage errors
    assert_eq!(fvh(&["pg", "--m", "2", "--n", "4"]).code, 2);
    assert_eq!(fvh(&["mcoef", "--m", "2", "--n", "3", "--lambda", "1/"]).code, 2);
    assert_eq!(fvh(&["rg-value", "--m", "1", "--n", "2", "--genus", "1"]).code, 2);
    assert_eq!(fvh(&["no-such-command"]).code, 2);
    let out = fvh(&["pg", "--m", "0", "--n", "3"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn rg_poly_json_decodes() {
    let mut v = json(&["rg-poly", "--genus", "2", "--format", "json"]);
    let diag = v.as_object_mut().unwrap().remove("diagnostics").unwrap();
    assert_eq!(diag["rank"], diag["unknowns"]);
    let poly = RgPolynomial::from_json(&v.to_string()).unwrap();
    assert_eq!(poly.coeffs, fvh::fixtures::r_g(2));
    assert_eq!(poly.g, 2);
}

#[test]
fn rg_value_agrees_with_polynomial() {
    let v = json(&["rg-value", "--m", "2", "--n", "3", "--genus", "2", "--format", "json"]);
    let r = fvh::gap::r_g_value(&fvh::shift::LaxParams::new(2, 3).unwrap(), 2).unwrap();
    let text = v.to_string();
    assert!(text.contains(&format!("\"num\":\"{}\"", r.numer())), "{text}");
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("fvh-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = fvh(&["ck", "--m", "2", "--n", "3", "--format", "json", "--output", p]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["C"][1]["value"]["num"], "-17");
    assert!(v["C"].as_array().unwrap().iter().all(|c| c["closed_form_agrees"] == true));
}

#[test]
fn suites_pass() {
    for suite in ["evenness", "two-route", "difference-equation"] {
        let out = fvh(&["check", "--suite", suite, "--m", "1", "--n", "2", "--format", "json"]);
        assert_eq!(out.code, 0, "{suite}: {}", out.stdout);
    }
    let out = fvh(&["check", "--suite", "genus0", "--m", "2", "--n", "3", "--degree", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn symbolic_latex() {
    let out = fvh(&["pg", "--genus", "1", "--format", "latex"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains('m'), "{}", out.stdout);
}

#[test]
fn binary_runs() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_fvh"))
        .args(["ck", "--m", "1", "--n", "1", "--order", "1", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["C"][0]["value"]["num"], "1");
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_fvh")).args(["pg", "--m", "4", "--n", "6"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
