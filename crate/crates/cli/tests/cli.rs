use std::process::Command;

use serde_json::Value;
use stairflow::numfield::context;
use stairflow::FieldElement;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stairflow").chain(args.iter().copied());
    let code = stairflow_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn slopes_csv() {
    let (code, out, _) = run(&["slopes", "--n", "5", "--depth", "1", "--format", "csv", "--precision", "10"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("word,slope_exact,slope_decimal"));
    let decimals: Vec<&str> = lines.map(|l| l.rsplit(',').next().unwrap()).collect();
    for want in ["0.000000000", "0.6180339887", "1.000000000", "1.618033989"] {
        assert!(decimals.contains(&want), "{want} missing from {decimals:?}");
    }
    assert!(out.contains("\n(1),-1+x,"));
    let (_, deeper, _) = run(&["slopes", "--n", "5", "--depth", "2", "--format", "csv"]);
    assert!(deeper.contains("\n\"(0,1)\","));
}

#[test]
fn table1_rows() {
    let (code, v) = json(&["table1", "--max-n", "15"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let row = |i: usize| -> Vec<&str> { rows[i]["slopes"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect() };
    assert_eq!(row(0), ["1.0000", "1.6180"]);
    assert_eq!(row(2), ["1.0000", "1.1372", "1.3473", "1.8794"]);
    assert!(rows.iter().all(|r| r["matches_vertex_values"] == true));
}

#[test]
fn staircase_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let (code, v) = json(&["staircase", "--n", "5", "--svg", a.to_str().unwrap(), "--diagonals"]);
    assert_eq!(code, 0);
    assert_eq!(v["aspect"], "x");
    assert!(v["aspect_decimal"].as_str().unwrap().starts_with("1.6180"));
    assert_eq!(v["rows"][0]["w"], "x");
    assert_eq!(v["rows"][0]["h"], "1");
    assert_eq!(v["cylinders"]["horizontal"], 2);
    assert_eq!(v["cone_points"][0]["angle_over_2pi"], 3.0);
    run(&["staircase", "--n", "5", "--svg", b.to_str().unwrap(), "--diagonals"]);
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    assert!(String::from_utf8(sa).unwrap().starts_with("<?xml"));
}

#[test]
fn exact_values_reparse() {
    let ctx = context(7).unwrap();
    let (_, v) = json(&["staircase", "--n", "7"]);
    let mut texts = Vec::new();
    for r in v["rectangles"].as_array().unwrap() {
        for k in ["x0", "y0", "x1", "y1"] {
            texts.push(r[k].as_str().unwrap().to_string());
        }
    }
    for d in v["diagonal_slopes"].as_array().unwrap() {
        texts.push(d["exact"].as_str().unwrap().to_string());
    }
    for t in texts {
        let e = FieldElement::parse(&ctx, &t).unwrap();
        assert_eq!(e.to_text(), t);
    }
}

#[test]
fn trace_exact_and_numeric() {
    let (code, v) = json(&["trace", "--n", "5", "--slope", "1", "--start", "1/10,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "closed");
    assert_eq!(v["length_sq"], "4+6*x");
    let exact_seq = v["sequence"].clone();
    let (_, w) = json(&["trace", "--n", "5", "--slope", "1", "--start", "1/10,0", "--numeric", "--tol", "1e-9"]);
    assert_eq!(w["result"], "closed");
    assert_eq!(w["sequence"], exact_seq);
    assert!((w["length"].as_f64().unwrap() - v["length"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn trace_samples() {
    let (code, v) = json(&["trace", "--n", "5", "--slope", "x", "--samples", "5", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["samples"].as_array().unwrap().len(), 5);
    assert_eq!(v["all_closed"], true);
    let (_, again) = json(&["trace", "--n", "5", "--slope", "x", "--samples", "5", "--seed", "3"]);
    assert_eq!(v, again);
}

#[test]
fn classify_reports() {
    let (code, v) = json(&["classify", "--n", "5", "--slope", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["word"], "(3,0,1)");
    assert_eq!(v["terminal"], "vertical");
    let (code, v) = json(&["classify", "--n", "7", "--slope", "1+x^2", "--max-steps", "50"]);
    assert_eq!(code, 1);
    assert_eq!(v["periodic"], false);
}

#[test]
fn equiv_reports_both_correspondences() {
    let (code, v) = json(&["equiv", "--n", "5", "--depth", "4", "--threads", "2"]);
    assert_eq!(v["generators_match"], true);
    assert_eq!(v["alternating"]["passed"], true);
    assert_eq!(v["literal"]["passed"], false);
    assert_eq!(code, 1);
    let (code, v) = json(&["equiv", "--n", "5", "--depth", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn algebra_subcommands() {
    let (code, v) = json(&["minpoly", "--n", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["polynomial"], "x^3 - x^2 - 2*x + 1");
    let (code, v) = json(&["minpoly", "--max-n", "49"]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"].as_array().unwrap().len(), 23);
    let (code, v) = json(&["polys", "--n", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["p_m_at_x"], "0");
    let (code, v) = json(&["identities", "--max-n", "13"]);
    assert_eq!(code, 0);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["holds"] == true));
    let (code, v) = json(&["project", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["vertices"][3]["exact"], "-1");
    assert!(v["radius"].as_str().unwrap().starts_with("0.29389262614623656"));
}

#[test]
fn exit_code_contract() {
    for args in [
        &["table1", "--max-n", "16"][..],
        &["staircase", "--n", "4"],
        &["slopes", "--depth", "9"],
        &["trace", "--slope", "1", "--start", "0,0"],
        &["trace", "--slope", "1", "--start", "9,9"],
        &["trace", "--slope", "-1"],
        &["classify", "--slope", "1+"],
        &["polys", "--precision", "5"],
        &["equiv", "--format", "csv"],
        &["frobnicate"],
        &["slopes", "--bogus"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes_and_env_precision() {
    let bin = env!("CARGO_BIN_EXE_stairflow");
    let out = Command::new(bin).args(["polys", "--n", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["minpoly", "--n", "5"]).env("STAIRCASE_PRECISION", "12").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["root"], "1.61803398875");
    let out = Command::new(bin).args(["minpoly", "--n", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.csv");
    let (code, out, _) = run(&["table1", "--max-n", "7", "--format", "csv", "--output", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(p).unwrap();
    assert_eq!(text.lines().next(), Some("n,slope_exact,slope_decimal"));
    assert_eq!(text.lines().count(), 6);
}
