use std::process::Command;

use arrangelat::cli::run;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arrangelat"))
}

#[test]
fn binary_exit_codes() {
    let out = bin().args(["length", "--family", "braid", "--n", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "24\n");

    let out = bin().args(["poincare", "--input", "missing.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stderr).unwrap().lines().count(), 1);
}

#[test]
fn decompose_both_reports_total_six() {
    let o = run(["decompose", "--family", "braid", "--n", "3", "--method", "both"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["length"], "6");
    assert_eq!(v["factors"].as_array().unwrap().len(), 5);

    let text = run(["decompose", "--family", "braid", "--n", "3", "--format", "text"]);
    assert!(text.stdout.contains("total length 6"));
    for method in ["direct", "recursive"] {
        let o = run(["decompose", "--family", "braid", "--n", "3", "--method", method]);
        assert_eq!(o.stdout, run(["decompose", "--family", "braid", "--n", "3"]).stdout);
    }
}

#[test]
fn builtin_round_trip_through_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("braid4.json");
    let o = run(["builtin", "--family", "braid", "--n", "4", "--emit-json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    for verb in ["lattice", "mobius", "poincare", "charpoly", "length", "decompose", "hasse"] {
        let from_family = run([verb, "--family", "braid", "--n", "4"]);
        let from_file = run([verb, "--input", path.to_str().unwrap()]);
        assert_eq!(from_family, from_file, "{verb}");
        assert_eq!(from_family.code, 0);
    }
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        ["lattice", "--family", "generic", "--n", "3", "--m", "5"],
        ["decompose", "--family", "generic", "--n", "3", "--m", "5"],
        ["hasse", "--family", "generic", "--n", "3", "--m", "5"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn lattice_json_shape() {
    let o = run(["lattice", "--family", "boolean", "--n", "2"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let flats = v["flats"].as_array().unwrap();
    assert_eq!(flats.len(), 4);
    assert_eq!(flats[3]["system"], serde_json::json!([["1", "0", "0"], ["0", "1", "0"]]));
    assert_eq!(flats[3]["mu"], "1");
    assert_eq!(flats[3]["support"], serde_json::json!([0, 1]));
    assert_eq!(v["covers"].as_array().unwrap().len(), 4);
}

#[test]
fn polynomial_outputs() {
    assert_eq!(run(["poincare", "--family", "braid", "--n", "3"]).stdout, "[\"1\",\"3\",\"2\"]\n");
    assert_eq!(run(["poincare", "--family", "braid", "--n", "3", "--format", "text"]).stdout, "1 + 3t + 2t^2\n");
    assert_eq!(run(["charpoly", "--family", "boolean", "--n", "2", "--format", "text"]).stdout, "1 - 2t + t^2\n");
    assert_eq!(run(["length", "--family", "braid", "--n", "3", "--format", "json"]).stdout, "\"6\"\n");
}

#[test]
fn triple_reports_both_identities() {
    let o = run(["triple", "--family", "braid", "--n", "3", "--pivot", "1"]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["deletion_restriction"]["poincare_deletion"], serde_json::json!(["1", "2", "1"]));
    assert_eq!(v["mobius_additivity"]["flats"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_with_primes() {
    let o = run(["verify", "--family", "braid", "--n", "3", "--prime", "101"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v[0]["point_count"], "999900");
    assert_eq!(v[0]["chi_at_p"], "999900");

    // Only bad primes given.
    let o = run(["verify", "--family", "generic", "--n", "2", "--m", "3", "--prime", "2"]);
    assert_eq!(o.code, 2);
    // Not a prime.
    assert_eq!(run(["verify", "--family", "braid", "--n", "3", "--prime", "100"]).code, 2);
}

#[test]
fn budget_from_environment() {
    let out = bin()
        .args(["verify", "--family", "braid", "--n", "3", "--prime", "101"])
        .env("ARRANGELAT_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("budget"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.json");
    std::fs::write(
        &path,
        r#"{"ambient_dim":2,"hyperplanes":[{"normal":["1","0"],"offset":"0"},{"normal":["2","0"],"offset":"0"}]}"#,
    )
    .unwrap();
    let o = run(["lattice", "--input", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("0 and 1"));
    assert_eq!(run(["lattice", "--family", "braid"]).code, 2);
    assert_eq!(run(["lattice", "--family", "torus", "--n", "2"]).code, 2);
    assert_eq!(run(["decompose", "--family", "braid", "--n", "2", "--format", "dot"]).code, 2);
}
