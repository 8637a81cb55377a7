use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittmaps")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_phi_on_g4() {
    let o = run(&["eval", "--map", "phi", "--expr", "e1*e3 - e2^2 - e4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "y^3*z - y^2*z^2");
}

#[test]
fn eval_phi_on_g() {
    let o = run(&["eval", "--map", "phi", "--expr", "e1*e5 - 4*e2*e4 + 3*e3^2 + 2*e6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn adpow_matches_nested_commutators() {
    let o = run(&["adpow", "--x", "e-1", "--k", "3", "--y", "e1*e3 - e2^2 - e4"]);
    assert_eq!(stdout(&o).trim(), "12*e-1*e2 - 12*e0*e1 - 12*e1");
    let g4 = "(e1*e3 - e2^2 - e4)";
    let ad1 = format!("(e-1*{g4} - {g4}*e-1)");
    let ad2 = format!("(e-1*{ad1} - {ad1}*e-1)");
    let ad3 = format!("e-1*{ad2} - {ad2}*e-1");
    let s = run(&["straighten", "--mode", "witt", "--expr", &ad3]);
    assert_eq!(stdout(&s).trim(), "12*e-1*e2 - 12*e0*e1 - 12*e1");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["kernel", "--map", "lambda", "--a", "1/0", "--degree", "5"][..],
        &["kernel", "--map", "lambda", "--degree", "0"],
        &["kernel", "--map", "psi", "--degree", "3"],
        &["verify", "all", "--format", "xml"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn bad_expression_exits_two() {
    let o = run(&["straighten", "--expr", "e0*e1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn kernel_generic_degree_six() {
    let o = run(&["kernel", "--map", "lambda", "--a", "generic", "--degree", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn kernel_special_value() {
    let o = run(&["kernel", "--map", "lambda", "--a", "0", "--degree", "5"]);
    assert!(stdout(&o).starts_with("degree 5: dimension 2"));
}

#[test]
fn hilbert_of_b() {
    let o = run(&["hilbert", "--family", "B", "--degree", "10"]);
    let out = stdout(&o);
    assert!(out.contains("B: 1,1,2,3,5,7,10,13,17,21,26"), "{out}");
    assert!(out.contains("matches through degree 10"));
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["verify", "all", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 28);
    assert!(claims.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_single_claim_table() {
    let o = run(&["verify", "claim-A4a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c1 = -1/6, c2 = 1, c3 = 1/6"));
    let bad = run(&["verify", "no-such-claim"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn nonfg_and_geom() {
    let o = run(&["nonfg", "--degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n=6:111"));
    let g = run(&["geom"]);
    assert_eq!(g.status.code(), Some(0));
    assert!(stdout(&g).contains("(x*y + (-a)*y^2)/(x^2 - x*y)"));
}
