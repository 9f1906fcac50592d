use std::process::{Command, Output};

fn pbq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbq")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unitary_m3_k10_has_two_rows() {
    let o = pbq(&["unitary", "--m", "3", "--k", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "m,k,p,L,dim,status,listed_rows\n3,10,27,3,4,unitarizable,(6)\n3,10,29,1,2,unitarizable,(5)\n"
    );
}

#[test]
fn anticommutator_evaluates_to_the_cartan_combination() {
    let o = pbq(&["eval", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--expr", "a+ a- + a- a+", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["diagonal"], true);
    assert_eq!(v["zero"], false);
    // [1] = [3] = 1 at q = e^{iπ/4}: the diagonal is the identity.
    assert!(!v["scalar"].is_null());
    let other = pbq(&["eval", "--m", "1", "--k", "3", "--p", "1", "--L", "2", "--expr", "a+ a- + a- a+", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&other)).unwrap();
    assert_eq!(v["diagonal"], true);
    assert!(v["scalar"].is_null());
}

#[test]
fn canon_reduces_m7_k4() {
    let o = pbq(&["canon", "--m", "7", "--k", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["m"], 1);
    assert_eq!(v["params"]["k"], 4);
}

#[test]
fn classify_csv_columns_and_order() {
    let o = pbq(&["classify", "--m", "1", "--k", "2", "--format", "csv", "--p-grid", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "m,k,case,p,L,dim,casimir_re,casimir_im,unitarizable");
    let ps: Vec<String> = lines.map(|l| l.split(',').nth(3).unwrap().to_string()).collect();
    assert_eq!(ps, ["1/2", "1", "2", "3", "4", "5", "6", "7", "8"]);
}

#[test]
fn output_is_byte_stable_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let args = ["classify", "--m", "2", "--k", "5", "--format", "json", "--out", path.to_str().unwrap()];
    assert_eq!(pbq(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(pbq(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(&path).unwrap());
    assert!(pbq(&["classify", "--m", "2", "--k", "5", "--format", "json"]).stdout == first);
}

#[test]
fn matrices_json_and_orthonormal() {
    let o = pbq(&["matrices", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--orthonormal", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["basis_kind"], "orthonormal");
    let o = pbq(&["matrices", "--m", "1", "--k", "2", "--p", "2", "--L", "1", "--orthonormal"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pbq(&["matrices", "--m", "1", "--k", "3", "--p", "2", "--L", "3"]);
    assert_eq!(o.status.code(), Some(2), "non-singular truncation is refused");
    let o = pbq(&["matrices", "--m", "1", "--k", "2", "--p", "0.37", "--L", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(pbq(&["verify", "--m", "1", "--k", "4"]).status.code(), Some(0));
    // Census disagreement with the published list is a verification failure.
    assert_eq!(pbq(&["verify", "--m", "2", "--k", "3"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["classify", "--m", "2", "--k", "4"],
        vec!["classify", "--m", "1", "--k", "2", "--precision", "8"],
        vec!["classify", "--m", "1", "--k", "2", "--format", "xml"],
        vec!["classify", "--m", "1", "--k", "2", "--p-grid", "0:0:1"],
        vec!["eval", "--m", "1", "--k", "2", "--p", "1", "--L", "1", "--expr", "a+ +"],
        vec!["canon", "--m", "4", "--k", "2"],
        vec!["frobnicate"],
        vec![],
    ] {
        assert_eq!(pbq(&args).status.code(), Some(2), "{args:?}");
    }
}
