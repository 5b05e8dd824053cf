use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn tormod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tormod")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tormod(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn schema() -> JSONSchema {
    let text = include_str!("../../../docs/cli-output.schema.json");
    JSONSchema::compile(&serde_json::from_str(text).unwrap()).expect("schema compiles")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{args:?} violates the schema: {msgs:?}");
    }
    v
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["low", "E y. x = 2*y"]), "false\n");
    assert_eq!(stdout(&["low", "E y . (x = 2*y & 3*y = 0)"]), "true\n");
    assert_eq!(stdout(&["low", "2*x = 0"]), "true\n");
    assert_eq!(stdout(&["card", "stable", "beth(ω)"]), "false (König)\n");
    assert_eq!(stdout(&["card", "stable", "2^aleph0"]), "true\n");
    assert_eq!(stdout(&["card", "stable", "aleph1"]), "unknown (CH)\n");
    assert_eq!(
        stdout(&["limit-model", "lambda", "--cof", "w1"]),
        "t(Π_p PE(⊕_n Z(p^n)^(λ))) ⊕ ⊕_p Z(p^∞)^(λ)\n"
    );
    assert_eq!(
        stdout(&["limit-model", "lambda", "--cof", "w"]),
        "t(Π_p PE(⊕_n Z(p^n)^(λ)))^(ℵ0) ⊕ ⊕_p Z(p^∞)^(λ)\n"
    );
    assert_eq!(
        stdout(&["limit-model", "lambda", "--cof", "w1", "--p", "2"]),
        "t(PE(⊕_n Z(2^n)^(λ))) ⊕ Z(2^∞)^(λ)\n"
    );
    assert_eq!(
        stdout(&["limit-model", "lambda", "--cof", "w1", "--ascii"]),
        "t(Prod_p(PE(Sum_n(Z(p^n)^(lambda))))) + Sum_p(Z(p^inf)^(lambda))\n"
    );
}

#[test]
fn group_commands() {
    assert_eq!(stdout(&["eval", "E y. x = 2*y", "Z/4"]), "<(2)>\norder 2\n");
    assert_eq!(stdout(&["pure", "<(1,1)>", "Z/4 + Z/2"]), "true\n");
    assert!(stdout(&["pure", "<(2)>", "Z/4"]).starts_with("false\nwitness:"));
    assert_eq!(stdout(&["complement", "<(1,1)>", "Z/4 + Z/2"]), "<(0,1)>\n");
    assert_eq!(stdout(&["complement", "<(2)>", "Z/4"]), "none\n");
    assert_eq!(stdout(&["torsion", "Z/4 + Z"]), "<(1,0)>\nstructure Z/4\n");
    assert_eq!(stdout(&["ulm", "Z/6"]), "α(2,1) = 1, α(3,1) = 1\n");
    assert_eq!(stdout(&["types", "0", "--bound", "2"]), "2\n");
    let chain = stdout(&["chain", "--witness", "2", "8", "2", "--indices"]);
    assert!(chain.contains("stabilizes at 8"), "{chain}");
    assert!(chain.contains("indices 4 4 4 4 4 4 4 4 1"), "{chain}");
    let custom = stdout(&["chain", "--template", "E y . x = 2^{n}*y", "--group", "Z/8", "--max", "4"]);
    assert!(custom.contains("orders 8 4 2 1 1") && custom.contains("stabilizes at 3"), "{custom}");
}

#[test]
fn json_matches_schema_and_plain_output() {
    let v = json(&["low", "E y. x = 2*y"]);
    assert_eq!(v["command"], "low");
    assert_eq!(v["result"], false);
    let v = json(&["card", "stable", "beth(ω)"]);
    assert_eq!(v["result"]["summary"], "false (König)");
    assert!(v["trace"].as_array().is_some_and(|t| !t.is_empty()));
    let v = json(&["limit-model", "lambda", "--cof", "w1"]);
    assert_eq!(v["result"], stdout(&["limit-model", "lambda", "--cof", "w1"]).trim_end());
    let v = json(&["complement", "<(2)>", "Z/4"]);
    assert!(v["result"].is_null());
    assert!(v["trace"][0].as_str().unwrap().contains("witness"));
    for args in [
        &["eval", "x = 2*y", "Z/4"][..],
        &["pure", "<(2)>", "Z/4"],
        &["torsion", "Z/6 + Z"],
        &["chain", "--witness", "3", "2", "1", "--indices"],
        &["types", "Z/2", "--bound", "4"],
        &["ulm", "Z/4 + Z/2"],
        &["card", "compare", "aleph1", "2^aleph0"],
        &["card", "normalize", "(2^aleph0)^aleph0"],
        &["card", "cof", "beth(omega)"],
        &["verify", "--suite", "order-patterns"],
    ] {
        json(args);
    }
}

#[test]
fn verify_suites_are_deterministic() {
    let a = stdout(&["verify", "--suite", "stability"]);
    assert!(a.starts_with("PASS  8 stability"), "{a}");
    assert_eq!(a, stdout(&["verify", "--suite", "stability"]));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| tormod(args).status.code();
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["low"]), Some(2));
    assert_eq!(code(&["low", "x = 2a"]), Some(2));
    assert_eq!(code(&["eval", "x = 0", "Z/"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "nope"]), Some(2));
    assert_eq!(code(&["limit-model", "lambda", "--cof", "w2"]), Some(2));
    assert_eq!(code(&["ulm", "Z"]), Some(1));
    assert_eq!(code(&["chain", "--witness", "2", "0", "1"]), Some(2));
    assert_eq!(code(&["chain"]), Some(2));
    assert_eq!(code(&["card", "stable", "7"]), Some(1));
    assert_eq!(code(&["limit-model", "beth(omega)", "--cof", "w1"]), Some(1));
    assert_eq!(code(&["pure", "<(1)>", "Z/2 + Z/2"]), Some(1));
    let err = String::from_utf8(tormod(&["low", "x = 2a"]).stderr).unwrap();
    assert!(err.contains("2a"), "{err}");
}
