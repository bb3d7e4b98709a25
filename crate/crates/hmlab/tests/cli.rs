//! End-to-end checks of the command-line interface: output formats, exit
//! codes, determinism, and cache behaviour.

use hmlab::nielsen::ClassSet;
use hmlab::permtools::FactoredInteger;
use std::process::{Command, Output};

fn hmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn enumerate_json_and_round_trip() {
    let out = hmlab(&["enumerate", "--group", "sym3", "--b", "4", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["computation"], "enumerate");
    assert_eq!(value["params"]["group"], "sym3");
    assert_eq!(value["results"]["classes"], 4);
    // re-serializing the parsed report reproduces the bytes exactly
    let reprinted = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(reprinted, text);
}

#[test]
fn predict_thm3_totals() {
    let out = hmlab(&["predict", "thm3", "--b", "6", "--N", "5", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let expected = FactoredInteger::from_u64(60)
        .pow(40)
        .mul(&FactoredInteger::from_u64(25920));
    assert_eq!(
        value["results"]["total_decimal"],
        serde_json::Value::String(expected.to_biguint().to_string())
    );
    let factored: Vec<(u64, u64)> = value["results"]["total_factored"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_u64().unwrap(), p[1].as_u64().unwrap()))
        .collect();
    assert_eq!(factored, expected.pairs());
}

#[test]
fn predict_hypothesis_violation_exits_1() {
    let out = hmlab(&["predict", "thm3", "--b", "6", "--N", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("b>8"), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_command_exits_64() {
    let out = hmlab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn unknown_flag_exits_64() {
    let out = hmlab(&["enumerate", "--grupo", "sym3", "--b", "4"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn analyze_output_is_deterministic() {
    let args = ["analyze", "--group", "sym3", "--b", "6", "--format", "json"];
    let a = hmlab(&args);
    let b = hmlab(&args);
    assert!(a.status.success(), "stderr: {}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let value: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    // the sym3 action is its own omega, so the kernel is trivial
    assert_eq!(value["results"]["kernel_order_decimal"], "1");
    assert_eq!(value["results"]["order_decimal"], "25920");
}

#[test]
fn analyze_g0_matches_known_order() {
    let out = hmlab(&["analyze", "--group", "sym4", "--b", "6", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let expected = FactoredInteger::from_prime_power(3, 40)
        .mul(&FactoredInteger::from_prime_power(2, 16))
        .mul(&FactoredInteger::from_u64(25920));
    assert_eq!(
        value["results"]["order_decimal"],
        serde_json::Value::String(expected.to_biguint().to_string())
    );
    assert_eq!(value["results"]["transitive"], true);
}

#[test]
fn stretch_gate_and_time_budget() {
    let out = hmlab(&["analyze", "--group", "sym4", "--b", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--stretch"), "stderr: {}", stderr(&out));

    let out = hmlab(&[
        "analyze", "--group", "sym4", "--b", "8", "--stretch", "--time-budget", "0",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("budget"), "stderr: {}", stderr(&out));
}

#[test]
fn cache_round_trip_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sym4_b6.cache");
    let args = |p: &str| {
        vec![
            "enumerate".to_string(),
            "--group".into(),
            "sym4".into(),
            "--b".into(),
            "6".into(),
            "--cache".into(),
            p.to_string(),
            "--format".into(),
            "json".into(),
        ]
    };
    let argv = args(path.to_str().unwrap());
    let argv: Vec<&str> = argv.iter().map(|s| s.as_str()).collect();
    let first = hmlab(&argv);
    assert!(first.status.success(), "stderr: {}", stderr(&first));
    assert!(path.exists());
    let second = hmlab(&argv);
    assert_eq!(stdout(&first), stdout(&second), "cache reuse changes output");
    let cs = ClassSet::load(&path).unwrap();
    assert_eq!(cs.len(), 120);

    // a cache for the wrong parameters is rejected
    let out = hmlab(&[
        "enumerate", "--group", "sym4", "--b", "8",
        "--cache", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_desk_suite_passes() {
    let out = hmlab(&["verify", "--suite", "desk"]);
    let text = stdout(&out);
    assert!(out.status.success(), "output: {text}");
    for i in 1..=10 {
        assert!(
            text.contains(&format!("criterion {i}: PASS")),
            "missing criterion {i} in: {text}"
        );
    }
}

#[test]
fn chain_and_cube_checks() {
    let out = hmlab(&["chain-check", "--g", "0", "--N", "5", "--format", "tsv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("computation\tchain-check"));
    assert!(text.contains("order_decimal\t120"), "got: {text}");

    let out = hmlab(&["cube-check", "--g", "0", "--N", "3", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["results"]["full"], false);
    assert_eq!(value["results"]["expected_full"], false);
    assert_eq!(value["results"]["ok"], true);
}

#[test]
fn omega_crosscheck_and_coset_rep() {
    let out = hmlab(&["omega-crosscheck", "--g", "0", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["results"]["ok"], true);
    assert_eq!(value["results"]["projective_order_decimal"], "25920");

    let out = hmlab(&["coset-rep", "--g", "0", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["results"]["cosets"], 80);
    let expected = FactoredInteger::from_prime_power(2, 16)
        .mul(&FactoredInteger::from_u64(25920));
    assert_eq!(
        value["results"]["image_order_decimal"],
        serde_json::Value::String(expected.to_biguint().to_string())
    );

    let out = hmlab(&["coset-rep", "--g", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = hmlab(&["coset-rep", "--g", "0", "--max-cosets", "5"]);
    assert_eq!(out.status.code(), Some(2));
}
