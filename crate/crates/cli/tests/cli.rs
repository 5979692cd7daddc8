use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ndep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ndep")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = ndep(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().expect("exit code"), v)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn valo_alpha_example() {
    let (code, v) = report(&["valo", "alpha", "--p", "2", "--a", "t,t^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "ndep-report/1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["closed_form"], serde_json::json!(["2", "3"]));
    assert_eq!(v["result"]["direct"], v["result"]["closed_form"]);
}

#[test]
fn ramsey_example() {
    let (code, v) = report(&["shatter", "ramsey", "--l", "2", "--m", "2", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["r"], 3);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let (code, v) = report(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn randomized_commands_need_a_seed() {
    assert_eq!(ndep(&["opg", "gen", "--sizes", "2,2,2"]).status.code(), Some(2));
    assert_eq!(ndep(&["suite"]).status.code(), Some(2));
    assert_eq!(ndep(&["chaincond", "threshold", "--k", "2", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn bad_literal_reports_span() {
    let (code, v) = report(&["valo", "alpha", "--a", "t,t^^3"]);
    assert_eq!(code, 2);
    let detail = &v["error"]["detail"];
    assert_eq!(detail["kind"], "parse");
    assert_eq!(detail["detail"]["start"], 2);
}

#[test]
fn exhausted_budget_is_typed() {
    let (code, v) = report(&["shatter", "ramsey", "--l", "3", "--m", "3", "--n", "2", "--budget", "100"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "budget_exceeded");
    assert_eq!(v["error"]["detail"]["budget"], 100);
}

#[test]
fn precondition_failure_exits_one() {
    let (code, v) = report(&["valo", "alpha", "--a", "t,t"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "precondition");
}

#[test]
fn reports_are_deterministic() {
    let args = ["opg", "gen", "--sizes", "3,3,3", "--seed", "11"];
    assert_eq!(ndep(&args).stdout, ndep(&args).stdout);
    let other = ndep(&["opg", "gen", "--sizes", "3,3,3", "--seed", "12"]);
    assert_ne!(ndep(&args).stdout, other.stdout);
    let (_, v) = report(&args);
    assert_eq!(v["seed"], 11);
}

#[test]
fn iso_and_rho_over_f4() {
    let (code, v) = report(&["iso", "--p", "2", "--k", "2", "--a", "1,g"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
    let (code, v) = report(&["valo", "rho", "--p", "2", "--k", "2", "--a", "1,g"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["c"], "1");
}

#[test]
fn preimage_and_pipeline_examples() {
    let (code, v) = report(&["valo", "preimage", "--p", "2", "--a", "t,t^3", "--y", "t^5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["x_vals"][1], "2");
    let (code, v) = report(&["valo", "pipeline", "--p", "2", "--a", "t,t^3", "--u", "t^4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["val_w"], "1");
}

#[test]
fn bgrid_schedules() {
    let base = ["valo", "bgrid", "--p", "2", "--n", "2", "--ell", "3", "--y", "t"];
    assert_eq!(report(&base).0, 0);
    let mut interleaved = base.to_vec();
    interleaved.extend(["--schedule", "interleaved", "--gap", "2"]);
    let (code, v) = report(&interleaved);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
}

#[test]
fn chaincond_redundant_shape() {
    let (code, v) = report(&["chaincond", "redundant", "--k", "3", "--params", "g,g^2,g^3,g^4"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["d"], 4);
    assert_eq!(r["verified"], true);
    assert_eq!(r["families"], 1);
    assert!(r["nu"].is_array());
}

#[test]
fn chaincond_threshold_within_bound() {
    let (code, v) = report(&["chaincond", "threshold", "--k", "2", "--n", "1", "--seed", "5", "--trials", "40"]);
    assert_eq!(code, 0);
    assert!(v["result"]["d"].as_u64().unwrap() <= 3);
}

#[test]
fn shatter_decide_text_and_json() {
    let text = scratch("eq3.txt", "parts 3\n0: 100\n1: 010\n2: 001\nnone: 000\n");
    let path = text.to_str().unwrap();
    let (code, v) = report(&["shatter", "decide", "--input", path, "--grid", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["shattered"], true);
    let (_, v) = report(&["shatter", "decide", "--input", path, "--grid", "0,1"]);
    assert_eq!(v["result"]["shattered"], false);
    let (code, v) = report(&["shatter", "max", "--input", path, "--caps", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["side"], 1);
    let bad = scratch("bad.txt", "parts 2\nw: 1x\n");
    assert_eq!(ndep(&["shatter", "decide", "--input", bad.to_str().unwrap(), "--grid", "0"]).status.code(), Some(2));
}

#[test]
fn shatter_compose_and_bilinear() {
    let (code, v) = report(&["shatter", "compose", "--m", "5", "--base", "eq", "--funcs", "add@1:2,mul@1:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["relation"]["parts"], serde_json::json!([5, 5]));
    let args = ["shatter", "bilinear", "--p", "2", "--k", "4", "--form", "symplectic", "--dim", "2", "--d", "3", "--seed", "9", "--demo"];
    let (code, v) = report(&args);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["demo"]["shattered"], true);
}

#[test]
fn opg_round_trip_through_files() {
    let (_, v) = report(&["opg", "gen", "--sizes", "3,3,3", "--seed", "7"]);
    let host = scratch("host.json", &v["result"].to_string());
    let host = host.to_str().unwrap();
    let (code, v) = report(&["opg", "check", "--input", host, "--k", "1"]);
    assert_eq!(code, 0);
    assert!(v["result"]["demands"].as_u64().unwrap() > 0);
    let pattern = scratch("pattern.json", r#"{"n":3,"parts":[1,1,1],"edges":[[0,0,0]]}"#);
    let (code, _) = report(&["opg", "copy", "--host", host, "--pattern", pattern.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, _) = report(&["shatter", "blindpair", "--input", host]);
    assert_eq!(code, 0);
}

#[test]
fn opg_amalgamate_file() {
    let input = scratch(
        "amalgam.json",
        r#"{
            "a": {"n":2,"parts":[2,1],"edges":[[0,0]]},
            "b": {"n":2,"parts":[1,2],"edges":[[0,1]]},
            "c": {"n":2,"parts":[1,1],"edges":[]},
            "into_a": [[1],[0]],
            "into_b": [[0],[0]]
        }"#,
    );
    let (code, v) = report(&["opg", "amalgamate", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["result"]["parts"], serde_json::json!([2, 2]));
}

#[test]
fn field_and_moore() {
    let (code, v) = report(&["field", "--p", "3", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["elements"].as_array().unwrap().len(), 9);
    let (code, v) = report(&["moore", "--p", "2", "--k", "2", "--c", "1,g"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["independent"], true);
    let (_, v) = report(&["moore", "--p", "2", "--k", "2", "--c", "1,1"]);
    assert_eq!(v["result"]["independent"], false);
}

#[test]
fn suite_subset() {
    let (code, v) = report(&["suite", "--seed", "20240917", "--only", "1,10"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    assert!(v["result"][0].get("elapsed_ms").is_none());
}
