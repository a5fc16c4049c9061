use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hopfweil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfweil")).args(args).env_remove("HOPFWEIL_MAX_DIM").output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hopfweil-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn failing<'a>(r: &'a Value, name: &str) -> Option<&'a Value> {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name && c["pass"] == false)
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["frobnicate"][..], &["weil", "build", "--cutoff", "three"], &["--format", "xml", "hopf", "check"]] {
        let out = hopfweil(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let help = hopfweil(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("envelope"));
}

#[test]
fn passing_report_exits_zero() {
    let out = hopfweil(&["weil", "build", "--catalog", "z2", "--cutoff", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "hopfweil-report/1");
    assert_eq!(r["command"], "weil build");
    assert_eq!(r["parameters"]["cutoff"], "3");
    assert_eq!(r["pass"], true);
    assert!(r["error"].is_null());
}

#[test]
fn missing_file_is_a_reported_error() {
    let out = hopfweil(&["hopf", "check", "--file", "/nonexistent/h.def"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["pass"], false);
    assert!(r["error"].as_str().unwrap().contains("cannot read /nonexistent/h.def"));
}

#[test]
fn dimension_cap_comes_from_the_environment() {
    let run = |cap: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_hopfweil"))
            .args(["cforms", "cohomology", "--catalog", "z3", "--max-degree", "3"])
            .env("HOPFWEIL_MAX_DIM", cap)
            .output()
            .unwrap();
        (out.status.code(), report(&out))
    };
    let (code, r) = run("10");
    assert_eq!(code, Some(1));
    let error = r["error"].as_str().unwrap();
    assert!(error.contains("dimension 27 in degree 3") && error.contains("HOPFWEIL_MAX_DIM"), "{error}");
    let (code, r) = run("many");
    assert_eq!(code, Some(1));
    assert!(r["error"].as_str().unwrap().contains("positive integer"));
    assert_eq!(run("27").0, Some(0));
}

#[test]
fn zeroed_contraction_is_caught() {
    let out = hopfweil(&["operation", "verify", "--catalog", "sweedler4", "--zero-contraction", "x"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    for axiom in ["defLie", "antid", "Cr"] {
        let c = failing(&r, axiom).unwrap_or_else(|| panic!("{axiom} should fail"));
        assert!(!c["witness"].as_str().unwrap().is_empty());
    }
    let unknown = report(&hopfweil(&["operation", "verify", "--catalog", "sweedler4", "--zero-contraction", "q"]));
    assert!(unknown["error"].is_string());
}

#[test]
fn csv_reports_are_blocks() {
    let out = hopfweil(&["--format", "csv", "weil", "build", "--catalog", "z2", "--cutoff", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert!(blocks[0].starts_with("schema,command,inputs_digest,pass,error\nhopfweil-report/1,weil build,"));
    assert!(blocks[1].starts_with("check,degree,pass,witness\n"));
    let dims = blocks.iter().find(|b| b.starts_with("table:dims,")).expect("dims block");
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(dims.as_bytes());
    let rows: Vec<Vec<String>> = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    let dims: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(dims, ["1", "2", "6", "16"]);
}

#[test]
fn reports_are_reproducible() {
    for args in [&["hopf", "check"][..], &["connection", "solve", "--catalog", "sweedler4"], &["--format", "csv", "classical", "koszul"]] {
        assert_eq!(hopfweil(args).stdout, hopfweil(args).stdout, "{args:?}");
    }
    let a = report(&hopfweil(&["weil", "build", "--catalog", "z2", "--cutoff", "3"]));
    let b = report(&hopfweil(&["weil", "build", "--catalog", "z2", "--cutoff", "4"]));
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
}

#[test]
fn catalog_definitions_round_trip() {
    for name in ["z2", "z3", "s3", "sweedler4", "taft2", "taft3"] {
        let text = String::from_utf8(hopfweil(&["hopf", "catalog", name, "--definition-only"]).stdout).unwrap();
        let path = scratch(&format!("{name}.def"), &text);
        let from_file = hopfweil(&["operation", "verify", "--file", path.to_str().unwrap(), "--cutoff", "2"]);
        let from_catalog = hopfweil(&["operation", "verify", "--catalog", name, "--cutoff", "2"]);
        std::fs::remove_file(&path).unwrap();
        assert_eq!(from_file.status.code(), Some(0), "{name}");
        assert_eq!(report(&from_file)["checks"], report(&from_catalog)["checks"], "{name}");
    }
}

#[test]
fn inexact_literals_are_rejected_with_a_location() {
    let text = String::from_utf8(hopfweil(&["hopf", "catalog", "sweedler4", "--definition-only"]).stdout).unwrap();
    let path = scratch("float.def", &text.replace("product x g = -gx", "product x g = -0.5*gx"));
    let out = hopfweil(&["hopf", "check", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(1));
    let error = report(&out)["error"].as_str().unwrap().to_string();
    assert!(error.starts_with("line 15, column 16") && error.contains("0.5"), "{error}");
}

#[test]
fn lie_definition_files() {
    let path = scratch("heisenberg.def", "name heis\nfield rational\nkind lie\nbasis p q c\nbracket p q = c\n");
    let out = hopfweil(&["classical", "koszul", "--lie-file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(0));
    let rows = report(&out)["tables"][0]["rows"].clone();
    let betti: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r[2].as_str().unwrap()).collect();
    assert_eq!(betti, ["1", "2", "2", "1"]);
}
